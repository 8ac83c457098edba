#include "comet/typecheck.hpp"

#include <algorithm>

namespace comet {

std::string to_string(TypeErrorKind k) {
    switch (k) {
    case TypeErrorKind::UnboundVar: return "UnboundVar";
    case TypeErrorKind::LinearityViolation: return "LinearityViolation";
    case TypeErrorKind::Mismatch: return "Mismatch";
    case TypeErrorKind::SideConditionFailed: return "SideConditionFailed";
    case TypeErrorKind::EmptyEnum: return "EmptyEnum";
    case TypeErrorKind::UnknownEnum: return "UnknownEnum";
    }
    return "?";
}

namespace {

std::string format_error(TypeErrorKind kind, const std::string& rule, const std::string& detail,
                         const std::string& context, const Span& span, const std::string& which) {
    std::string msg = to_string(kind);
    if (!which.empty()) msg += "(" + which + ")";
    if (!rule.empty()) msg += " in rule " + rule;
    if (span.known()) msg += " at " + span.to_string();
    msg += ": " + detail;
    if (!context.empty()) msg += " [context: " + context + "]";
    return msg;
}

}  // namespace

TypeError::TypeError(TypeErrorKind kind, std::string rule, std::string detail, std::string context, Span span,
                     std::string which)
    : std::runtime_error(format_error(kind, rule, detail, context, span, which)),
      kind_(kind),
      rule_(std::move(rule)),
      detail_(std::move(detail)),
      context_(std::move(context)),
      which_(std::move(which)),
      span_(span) {}

std::string Judgement::to_string() const {
    std::string c = ctx.to_string() + " |- ";
    switch (kind) {
    case JudgementKind::TypeOf: return c + t.to_string() + " : " + type.to_string();
    case JudgementKind::Equal: return c + s.to_string() + " = " + t.to_string() + " : " + type.to_string();
    case JudgementKind::Leq: return c + s.to_string() + " <= " + t.to_string() + " : " + type.to_string();
    case JudgementKind::Disjoint: return c + s.to_string() + " _|_ " + t.to_string();
    case JudgementKind::NonZeroDomain: return c + "1/" + std::to_string(witness) + " <= dom " + t.to_string();
    }
    return c;
}

void validate_type(const Type& ty, Span span) {
    switch (ty.kind()) {
    case TypeKind::Const:
        if (!ty.decl()) throw TypeError(TypeErrorKind::UnknownEnum, "", "unknown type " + ty.const_name(), "", span);
        if (ty.decl()->constructors.empty())
            throw TypeError(TypeErrorKind::EmptyEnum, "", "enum " + ty.decl()->name + " has no constructors", "", span);
        break;
    case TypeKind::Sum:
    case TypeKind::Tensor:
        validate_type(ty.left(), span);
        validate_type(ty.right(), span);
        break;
    default: break;
    }
}

// ---------------------------------------------------------------------------
// Semantic judgements

namespace {

Rational left_mass(const Dist& d) {
    Rational m(0);
    for (const auto& [v, w] : d.weights())
        if (v.kind() == ValueKind::Inl) m += w;
    return m;
}

}  // namespace

bool check_equal(const Context& ctx, const Term& s, const Term& t, const Type&) {
    for (const auto& env : enumerate_envs(ctx))
        if (eval(ctx, s, env) != eval(ctx, t, env)) return false;
    return true;
}

bool check_leq(const Context& ctx, const Term& s, const Term& t, const Type& ty) {
    if (!ty.is_partial()) throw std::invalid_argument("ordering is only defined at types A + 1, not " + ty.to_string());
    for (const auto& env : enumerate_envs(ctx)) {
        Dist ds = eval(ctx, s, env), dt = eval(ctx, t, env);
        for (const auto& [v, w] : ds.weights())
            if (v.kind() == ValueKind::Inl && w > dt.weight(v)) return false;
    }
    return true;
}

bool check_disjoint(const Context& ctx, const Term& s, const Term& t) {
    for (const auto& env : enumerate_envs(ctx))
        if (left_mass(eval(ctx, s, env)) + left_mass(eval(ctx, t, env)) > 1) return false;
    return true;
}

std::uint64_t check_nonzero_domain(const Context& ctx, const Term& t) {
    std::optional<Rational> least;
    for (const auto& env : enumerate_envs(ctx)) {
        Rational d = left_mass(eval(ctx, t, env));
        if (sgn(d) == 0) throw ZeroDomain("dom " + t.to_string() + " is 0 at " + env_to_string(env));
        if (!least || d < *least) least = d;
    }
    if (!least) return 2;  // empty context denotation: vacuous
    // least n with 1/n <= d is ceil(1/d)
    mpz_class num = least->get_den(), den = least->get_num();
    mpz_class n = (num + den - 1) / den;
    if (n < 2) n = 2;
    if (!n.fits_ulong_p()) throw ZeroDomain("domain of " + t.to_string() + " is too small for a witness");
    return n.get_ui();
}

// ---------------------------------------------------------------------------
// Checker

namespace {

class Checker {
public:
    CheckResult result;

    std::set<std::string> check(const Context& ctx, const Term& t, Type& out, Span where) {
        if (t.span().known()) where = t.span();
        const auto& k = t.kids();
        auto fail = [&](TypeErrorKind kind, const std::string& rule, const std::string& detail,
                        const std::string& which = {}) -> TypeError {
            return TypeError(kind, rule, detail, ctx.to_string(), where, which);
        };
        auto disjoint = [&](const std::set<std::string>& a, const std::set<std::string>& b, const std::string& rule,
                            const std::string& what) {
            for (const auto& x : a)
                if (b.count(x)) throw fail(TypeErrorKind::LinearityViolation, rule, "variable " + x + " used in " + what);
        };
        switch (t.kind()) {
        case TermKind::Var: {
            const Type* ty = ctx.lookup(t.name());
            if (!ty) throw fail(TypeErrorKind::UnboundVar, "Tvar", "unbound variable " + t.name());
            out = *ty;
            return {t.name()};
        }
        case TermKind::Star: out = Type::one(); return {};
        case TermKind::Pair: {
            Type a, b;
            auto ua = check(ctx, k[0], a, where);
            auto ub = check(ctx, k[1], b, where);
            disjoint(ua, ub, "Tpair", "both components of " + t.to_string());
            out = Type::tensor(a, b);
            ua.insert(ub.begin(), ub.end());
            return ua;
        }
        case TermKind::LetPair: {
            Type p;
            auto us = check(ctx, k[0], p, where);
            if (!p.is_tensor())
                throw fail(TypeErrorKind::Mismatch, "Tlett", "let-pair scrutinee has type " + p.to_string());
            if (t.name() == t.name2()) throw fail(TypeErrorKind::Mismatch, "Tlett", "let-pair binds " + t.name() + " twice");
            Context inner = bind(bind(ctx, t.name(), p.left()), t.name2(), p.right());
            auto ub = check(inner, k[1], out, where);
            ub.erase(t.name());
            ub.erase(t.name2());
            disjoint(us, ub, "Tlett", "both the scrutinee and the body of a let");
            us.insert(ub.begin(), ub.end());
            return us;
        }
        case TermKind::Magic: {
            Type z;
            auto u = check(ctx, k[0], z, where);
            if (z.kind() != TypeKind::Zero)
                throw fail(TypeErrorKind::Mismatch, "Tmagic", "magic expects type 0, got " + z.to_string());
            validate_type(t.annotation(), where);
            out = t.annotation();
            return u;
        }
        case TermKind::Inl:
        case TermKind::Inr: {
            Type a;
            auto u = check(ctx, k[0], a, where);
            validate_type(t.annotation(), where);
            out = t.kind() == TermKind::Inl ? Type::sum(a, t.annotation()) : Type::sum(t.annotation(), a);
            return u;
        }
        case TermKind::Case: {
            Type r;
            auto ur = check(ctx, k[0], r, where);
            if (!r.is_sum()) throw fail(TypeErrorKind::Mismatch, "Tcase", "case scrutinee has type " + r.to_string());
            Type s, u;
            auto us = check(bind(ctx, t.name(), r.left()), k[1], s, where);
            auto uu = check(bind(ctx, t.name2(), r.right()), k[2], u, where);
            if (s != u)
                throw fail(TypeErrorKind::Mismatch, "Tcase", "case branches have types " + s.to_string() + " and " + u.to_string());
            us.erase(t.name());
            uu.erase(t.name2());
            us.insert(uu.begin(), uu.end());
            disjoint(ur, us, "Tcase", "both the scrutinee and a branch of a case");
            out = s;
            ur.insert(us.begin(), us.end());
            return ur;
        }
        case TermKind::Inlr: {
            Type a, b;
            auto ua = check(ctx, k[0], a, where);
            auto ub = check(ctx, k[1], b, where);
            if (!a.is_partial() || !b.is_partial())
                throw fail(TypeErrorKind::Mismatch, "Tinlr",
                           "partial pairing needs A + 1 and B + 1, got " + a.to_string() + " and " + b.to_string());
            for (const auto& env : enumerate_envs(ctx)) {
                Dist ds = eval(ctx, k[0], env), dt = eval(ctx, k[1], env);
                if (left_mass(ds) != 1 - left_mass(dt))
                    throw fail(TypeErrorKind::SideConditionFailed, "Tinlr",
                               "dom " + k[0].to_string() + " = ker " + k[1].to_string() + " fails at " + env_to_string(env),
                               "Equal");
            }
            record(JudgementKind::Equal, ctx, k[0], k[1], Type::two());
            out = Type::sum(a.left(), b.left());
            ua.insert(ub.begin(), ub.end());
            return ua;
        }
        case TermKind::Lft: {
            Type a;
            auto u = check(ctx, k[0], a, where);
            if (!a.is_sum()) throw fail(TypeErrorKind::Mismatch, "Tleft", "lft of type " + a.to_string());
            for (const auto& env : enumerate_envs(ctx))
                if (left_mass(eval(ctx, k[0], env)) != 1)
                    throw fail(TypeErrorKind::SideConditionFailed, "Tleft",
                               "inl?(" + k[0].to_string() + ") = top fails at " + env_to_string(env), "Equal");
            record(JudgementKind::Equal, ctx, k[0], k[0], a);
            out = a.left();
            return u;
        }
        case TermKind::Instr: {
            Type a;
            auto u = check(ctx, k[1], a, where);
            for (const auto& x : free_vars(k[0]))
                if (x != t.name() && ctx.contains(x))
                    throw fail(TypeErrorKind::LinearityViolation, "Tinstr",
                               "instrument test refers to outer variable " + x);
            Context inner{{t.name(), a}};
            Type test;
            Checker sub;
            sub.check(inner, k[0], test, where);
            absorb(sub);
            auto n = test.as_n();
            if (!n || *n == 0)
                throw fail(TypeErrorKind::Mismatch, "Tinstr", "instrument test has type " + test.to_string() + ", expected n");
            out = Type::copower(*n, a);
            return u;
        }
        case TermKind::OneOverN:
            if (t.number() < 2) throw fail(TypeErrorKind::Mismatch, "Toneovern", "1/n needs n >= 2");
            out = Type::two();
            return {};
        case TermKind::Literal: out = Type::two(); return {};
        case TermKind::Norm: {
            Type a;
            auto u = check(ctx, k[0], a, where);
            if (!a.is_partial()) throw fail(TypeErrorKind::Mismatch, "Tnorm", "norm of type " + a.to_string());
            std::uint64_t n;
            try {
                n = check_nonzero_domain(ctx, k[0]);
            } catch (const ZeroDomain& e) {
                throw fail(TypeErrorKind::SideConditionFailed, "Tnorm", e.what(), "NonZeroDomain");
            }
            Judgement j;
            j.kind = JudgementKind::NonZeroDomain;
            j.ctx = ctx;
            j.t = k[0];
            j.type = a;
            j.witness = n;
            result.judgements.push_back(std::move(j));
            if (!free_vars(k[0]).empty())
                result.warnings.push_back("norm in an open context at " + where.to_string() + ": " + t.to_string());
            out = a.left();
            return u;
        }
        case TermKind::Ovee: {
            Type a, b;
            auto ua = check(ctx, k[0], a, where);
            auto ub = check(ctx, k[1], b, where);
            if (a != b)
                throw fail(TypeErrorKind::Mismatch, "Tovee", "partial sum of " + a.to_string() + " and " + b.to_string());
            if (!a.is_partial()) throw fail(TypeErrorKind::Mismatch, "Tovee", "partial sum at type " + a.to_string());
            if (!check_disjoint(ctx, k[0], k[1]))
                throw fail(TypeErrorKind::SideConditionFailed, "Tovee",
                           k[0].to_string() + " and " + k[1].to_string() + " are not disjoint", "Disjoint");
            record(JudgementKind::Disjoint, ctx, k[0], k[1], a);
            out = a;
            ua.insert(ub.begin(), ub.end());
            return ua;
        }
        case TermKind::EnumCon: {
            if (!t.decl()) throw fail(TypeErrorKind::UnknownEnum, "Tconst", "constructor of an unknown enum");
            out = Type::constant(t.decl());
            validate_type(out, where);
            return {};
        }
        case TermKind::EnumCase: {
            if (!t.decl()) throw fail(TypeErrorKind::UnknownEnum, "Tcase", "case over an unknown enum");
            Type r;
            auto ur = check(ctx, k[0], r, where);
            if (r != Type::constant(t.decl()))
                throw fail(TypeErrorKind::Mismatch, "Tcase", "scrutinee has type " + r.to_string() + ", expected " + t.decl()->name);
            if (k.size() - 1 != t.decl()->constructors.size())
                throw fail(TypeErrorKind::Mismatch, "Tcase", "case over " + t.decl()->name + " needs one arm per constructor");
            if (k.size() == 1) throw fail(TypeErrorKind::EmptyEnum, "Tcase", "case over empty enum " + t.decl()->name);
            std::set<std::string> arms;
            for (std::size_t i = 1; i < k.size(); ++i) {
                Type a;
                auto ua = check(ctx, k[i], a, where);
                if (i == 1) out = a;
                else if (a != out)
                    throw fail(TypeErrorKind::Mismatch, "Tcase", "case arms have types " + out.to_string() + " and " + a.to_string());
                arms.insert(ua.begin(), ua.end());
            }
            disjoint(ur, arms, "Tcase", "both the scrutinee and an arm of a case");
            ur.insert(arms.begin(), arms.end());
            return ur;
        }
        }
        throw fail(TypeErrorKind::Mismatch, "", "unknown term");
    }

private:
    static Context bind(const Context& ctx, const std::string& x, const Type& ty) {
        Context out;
        for (const auto& [n, t] : ctx.entries())
            if (n != x) out.add(n, t);
        out.add(x, ty);
        return out;
    }

    void record(JudgementKind kind, const Context& ctx, const Term& s, const Term& t, const Type& ty) {
        Judgement j;
        j.kind = kind;
        j.ctx = ctx;
        j.s = s;
        j.t = t;
        j.type = ty;
        result.judgements.push_back(std::move(j));
    }

    void absorb(Checker& sub) {
        for (auto& j : sub.result.judgements) result.judgements.push_back(std::move(j));
        for (auto& w : sub.result.warnings) result.warnings.push_back(std::move(w));
    }
};

}  // namespace

CheckResult check_term(const Context& ctx, const Term& t) {
    for (const auto& [name, ty] : ctx.entries()) validate_type(ty, t.span());
    Checker c;
    Type ty;
    c.result.used = c.check(ctx, t, ty, t.span());
    c.result.type = ty;
    return std::move(c.result);
}

Type infer_type(const Context& ctx, const Term& t) { return check_term(ctx, t).type; }

}  // namespace comet
