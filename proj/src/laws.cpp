#include "comet/laws.hpp"

#include "comet/typecheck.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace comet {

void GenConfig::validate() const {
    if (max_card == 0 || max_context == 0 || max_den == 0 || max_depth < 0)
        throw std::invalid_argument("generator bounds must be at least 1");
}

// ---------------------------------------------------------------------------
// Generation

namespace {

const EnumRef& coin_enum() {
    static const EnumRef e = std::make_shared<EnumDecl>(EnumDecl{"Coin", {"heads", "tails"}});
    return e;
}

const EnumRef& suit_enum() {
    static const EnumRef e = std::make_shared<EnumDecl>(EnumDecl{"Suit", {"hearts", "spades", "clubs"}});
    return e;
}

Term top() { return build::top(); }
Term bot() { return build::bot(); }

}  // namespace

Term value_term(const Value& v, const Type& ty) {
    switch (v.kind()) {
    case ValueKind::Star: return Term::star();
    case ValueKind::Enum: return Term::enum_con(v.decl(), v.enum_index());
    case ValueKind::Inl: return Term::inl(value_term(v.inner(), ty.left()), ty.right());
    case ValueKind::Inr: return Term::inr(value_term(v.inner(), ty.right()), ty.left());
    case ValueKind::Pair: return Term::pair(value_term(v.inner(), ty.left()), value_term(v.second(), ty.right()));
    }
    throw std::logic_error("unknown value kind");
}

Gen::Gen(const GenConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {}

std::size_t Gen::below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

bool Gen::chance(std::size_t num, std::size_t den) { return below(den) < num; }

std::string Gen::fresh(const std::string& base) { return base + std::to_string(++counter_); }

Type Gen::type_of_card(std::size_t card) {
    if (card <= 1) return Type::one();
    std::vector<std::function<Type()>> options;
    options.push_back([&] {
        std::size_t l = 1 + below(card - 1);
        return Type::sum(type_of_card(l), type_of_card(card - l));
    });
    for (std::size_t d = 2; d * d <= card; ++d)
        if (card % d == 0)
            options.push_back([&, d] { return Type::tensor(type_of_card(d), type_of_card(card / d)); });
    if (card == 2) options.push_back([] { return Type::constant(coin_enum()); });
    if (card == 3) options.push_back([] { return Type::constant(suit_enum()); });
    return options[below(options.size())]();
}

Type Gen::type() { return type_of_card(1 + below(cfg_.max_card)); }

Context Gen::context(std::size_t max_vars) {
    Context c;
    std::size_t n = below(std::min(max_vars, cfg_.max_context) + 1);
    for (std::size_t i = 0; i < n; ++i) c.add(fresh("g"), type());
    return c;
}

Rational Gen::rational() {
    std::size_t den = 1 + below(cfg_.max_den);
    std::size_t num = below(den + 1);
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

Term Gen::scalar() {
    Rational q = rational();
    if (q.get_num() == 1 && q.get_den() >= 2) return Term::one_over(q.get_den().get_ui());
    return Term::literal(Scalar(q));
}

Term Gen::value(const Type& ty) {
    auto values = enumerate_values(ty);
    if (values.empty()) throw std::invalid_argument("no values of type " + ty.to_string());
    return value_term(values[below(values.size())], ty);
}

std::pair<Context, Context> Gen::split(const Context& avail) {
    Context l, r;
    for (const auto& [x, t] : avail.entries()) (chance(1, 2) ? l : r).add(x, t);
    return {l, r};
}

Term Gen::term(const Context& avail, const Type& ty, int depth) {
    std::vector<std::function<Term()>> options;
    std::vector<std::string> vars, sums, tensors, enums;
    for (const auto& [x, t] : avail.entries()) {
        if (t == ty) vars.push_back(x);
        if (t.is_sum()) sums.push_back(x);
        if (t.is_tensor()) tensors.push_back(x);
        if (t.kind() == TypeKind::Const) enums.push_back(x);
    }
    auto without = [&](const std::string& x) {
        Context c;
        for (const auto& [y, t] : avail.entries())
            if (y != x) c.add(y, t);
        return c;
    };

    for (const auto& x : vars) options.push_back([x] { return Term::var(x); });
    if (ty.is_two()) {
        options.push_back([&] { return scalar(); });
    } else {
        options.push_back([&] { return value(ty); });
    }
    options.push_back([&] {
        // a coin flip between two constants
        return build::cond(scalar(), value(ty), value(ty));
    });

    const int d = depth - 1;
    if (depth > 0) {
        options.push_back([&] {
            auto [l, r] = split(avail);
            Term c = term(l, Type::two(), d);
            return build::cond(c, term(r, ty, d), term(r, ty, d));
        });
        for (const auto& x : sums)
            options.push_back([&, x] {
                const Type& t = *avail.lookup(x);
                Context rest = without(x);
                std::string a = fresh("a"), b = fresh("b");
                return Term::case_of(Term::var(x), a, term(rest.extended(a, t.left()), ty, d), b,
                                     term(rest.extended(b, t.right()), ty, d));
            });
        for (const auto& x : tensors)
            options.push_back([&, x] {
                const Type& t = *avail.lookup(x);
                std::string a = fresh("a"), b = fresh("b");
                Context inner = without(x).extended(a, t.left()).extended(b, t.right());
                return Term::let_pair(a, b, Term::var(x), term(inner, ty, d));
            });
        for (const auto& x : enums)
            options.push_back([&, x] {
                const Type& t = *avail.lookup(x);
                Context rest = without(x);
                std::vector<Term> arms;
                for (std::size_t i = 0; i < t.decl()->constructors.size(); ++i) arms.push_back(term(rest, ty, d));
                return Term::enum_case(t.decl(), Term::var(x), arms);
            });
        if (ty.is_tensor())
            options.push_back([&] {
                auto [l, r] = split(avail);
                return Term::pair(term(l, ty.left(), d), term(r, ty.right(), d));
            });
        if (ty.is_sum()) {
            options.push_back([&] {
                return chance(1, 2) ? Term::inl(term(avail, ty.left(), d), ty.right())
                                    : Term::inr(term(avail, ty.right(), d), ty.left());
            });
            options.push_back([&] {
                // <rhd1 w, rhd2 w> for a generated w
                Term w = term(avail, ty, d);
                std::string v = fresh("v");
                Term l = Term::case_of(w, v, build::ret(Term::var(v)), "_", build::fail(ty.left()));
                Term r = Term::case_of(w, "_", build::fail(ty.right()), v, build::ret(Term::var(v)));
                return Term::inlr(l, r);
            });
        }
        if (ty.is_two()) {
            options.push_back([&] { return build::ortho(term(avail, ty, d)); });
            options.push_back([&] {
                Term p = term(avail, ty, d), q = term(avail, ty, d);
                return build::seq_product(avail, p, q);
            });
            options.push_back([&] {
                // (c & p) (+) (c^ & q) is always defined
                Term c = term(avail, ty, d);
                Term l = build::seq_product(avail, c, term(avail, ty, d));
                Term r = build::seq_product(avail, build::ortho(c), term(avail, ty, d));
                return Term::ovee(l, r);
            });
        }
        if (ty.is_partial()) {
            const Type a = ty.left();
            options.push_back([a] { return build::fail(a); });
            options.push_back([&, a] { return build::ret(term(avail, a, d)); });
            options.push_back([&, a] {
                auto [l, r] = split(avail);
                Type b = type_of_card(1 + below(3));
                std::string x = fresh("x");
                return build::do_bind(x, term(l, Type::partial(b), d), term(r.extended(x, b), ty, d), a);
            });
            options.push_back([&, a] {
                std::string x = fresh("x");
                Term p = term(Context{{x, a}}, Type::two(), d);
                return build::assert_(x, p, term(avail, a, d), a);
            });
        }
        options.push_back([&] {
            // nabla(instr(t))
            std::string x = fresh("x");
            Term p = term(Context{{x, ty}}, Type::two(), d);
            return build::nabla(Term::instr(x, p, term(avail, ty, d)), 2);
        });
        options.push_back([&] { return Term::lft(Term::inl(term(avail, ty, d), type_of_card(1 + below(2)))); });
        options.push_back([&] {
            // norm of a closed substate with non-zero domain
            Rational q = rational();
            if (q == 0) q = 1;
            Term guard = Term::literal(Scalar(q));
            return Term::norm(build::scale(guard, build::ret(term({}, ty, d)), ty));
        });
    }
    return options[below(options.size())]();
}

Term Gen::predicate(const std::string& x, const Type& a) { return term(Context{{x, a}}, Type::two()); }

std::vector<Term> Gen::ntest(const std::string& x, const Type& a, std::size_t n) {
    if (n == 1) return {top()};
    std::vector<Term> ps;
    switch (below(3)) {
    case 0: {
        // the components of a generated map into n
        Term t = term(Context{{x, a}}, Type::n(n));
        for (std::size_t i = 1; i <= n; ++i) ps.push_back(build::in_test(i, n, t));
        return ps;
    }
    case 1: {
        // constant weights summing to 1
        std::size_t den = 1 + below(cfg_.max_den);
        std::vector<std::size_t> cuts;
        for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(below(den + 1));
        cuts.push_back(0);
        cuts.push_back(den);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i < n; ++i) {
            Rational q(static_cast<long>(cuts[i + 1] - cuts[i]), static_cast<long>(den));
            q.canonicalize();
            ps.push_back(Term::literal(Scalar(q)));
        }
        return ps;
    }
    default: {
        // p, then p^ split further by sequential products
        Term p = predicate(x, a);
        ps.push_back(p);
        Term rest = build::ortho(p);
        Context c{{x, a}};
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Term q = predicate(x, a);
            ps.push_back(build::seq_product(c, rest, q));
            rest = build::seq_product(c, rest, build::ortho(q));
        }
        ps.push_back(rest);
        return ps;
    }
    }
}

std::size_t Sample::size() const {
    std::size_t s = 0;
    for (const auto& p : pieces) s += p.term.size();
    return s;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

Outcome holds() { return {}; }
Outcome vacuous(std::string why) { return {Verdict::Vacuous, std::move(why), {}}; }
Outcome fails(std::string why, std::string env = {}) { return {Verdict::Fails, std::move(why), std::move(env)}; }

bool typed(const Context& ctx, const Term& t, std::string* why = nullptr) {
    try {
        check_term(ctx, t);
        return true;
    } catch (const TypeError& e) {
        if (why) *why = e.what();
        return false;
    }
}

// Both sides must type-check and agree in every environment.
std::string one_line(const Dist& d) {
    std::string s = d.to_string();
    for (std::size_t i = s.find('\n'); i != std::string::npos; i = s.find('\n', i)) s.replace(i, 1, "; ");
    return s;
}

Outcome equal(const Context& ctx, const Term& lhs, const Term& rhs, const std::string& what = "") {
    std::string why, lead = what.empty() ? "" : what + " ";
    if (!typed(ctx, lhs, &why)) return fails(lead + "left side is ill-typed: " + why);
    if (!typed(ctx, rhs, &why)) return fails(lead + "right side is ill-typed: " + why);
    auto l = eval_all(ctx, lhs), r = eval_all(ctx, rhs);
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i].second != r[i].second)
            return fails(lead + lhs.to_string() + " gives {" + one_line(l[i].second) +
                             "} but " + rhs.to_string() + " gives {" + one_line(r[i].second) + "}",
                         env_to_string(l[i].first));
    return holds();
}

// Definedness transfers in both directions, and defined sides agree.
Outcome partial_equal(const Context& ctx, const Term& lhs, const Term& rhs) {
    std::string wl, wr;
    bool dl = typed(ctx, lhs, &wl), dr = typed(ctx, rhs, &wr);
    if (!dl && !dr) return vacuous("neither side is defined");
    if (dl != dr) return fails(dl ? "left side defined but right is not: " + wr : "right side defined but left is not: " + wl);
    return equal(ctx, lhs, rhs);
}

Outcome below(const Context& ctx, const Term& s, const Term& t) {
    std::string why;
    if (!typed(ctx, s, &why)) return fails("left side is ill-typed: " + why);
    if (!typed(ctx, t, &why)) return fails("right side is ill-typed: " + why);
    auto l = eval_all(ctx, s), r = eval_all(ctx, t);
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (const auto& [v, w] : l[i].second.weights()) {
            if (v.kind() != ValueKind::Inl) continue;
            if (w > r[i].second.weight(v))
                return fails(s.to_string() + " is not below " + t.to_string() + " at " + v.to_string(),
                             env_to_string(l[i].first));
        }
    }
    return holds();
}

bool same(const Context& ctx, const Term& s, const Term& t) { return equal(ctx, s, t).verdict == Verdict::Holds; }
bool leq(const Context& ctx, const Term& s, const Term& t) { return below(ctx, s, t).verdict == Verdict::Holds; }

Outcome all(std::initializer_list<std::function<Outcome()>> checks) {
    for (const auto& c : checks) {
        Outcome o = c();
        if (o.verdict != Verdict::Holds) return o;
    }
    return holds();
}

bool is_ntest(const Context& c, const std::vector<Term>& ps) {
    for (const auto& p : ps)
        if (!typed(c, p)) return false;
    for (const auto& env : enumerate_envs(c)) {
        Rational total(0);
        for (const auto& p : ps) total += eval(c, p, env).weight(Value::top());
        if (total != 1) return false;
    }
    return true;
}

Term rhd1(const Term& t, const Type& a) { return Term::case_of(t, "v", build::ret(Term::var("v")), "_", build::fail(a)); }
Term rhd2(const Term& t, const Type& b) { return Term::case_of(t, "_", build::fail(b), "v", build::ret(Term::var("v"))); }

// Terms of one sample; pieces are appended in order and read back by index.
struct Builder {
    Sample s;
    Builder& add(std::string label, Context ctx, Term t, Type ty) {
        s.pieces.push_back({std::move(label), std::move(ctx), std::move(t), std::move(ty)});
        return *this;
    }
    Builder& num(std::size_t n) {
        s.ints.push_back(n);
        return *this;
    }
    Sample done() { return std::move(s); }
};

std::vector<Term> terms_from(const Sample& s, std::size_t first, std::size_t count) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(s[first + i]);
    return out;
}

// Two partial maps that are always summable: each is scaled by a weight, with the weights summing to at most 1.
std::pair<Term, Term> summable(Gen& g, const Context& c, const Type& a) {
    std::size_t den = 1 + g.below(g.config().max_den);
    std::size_t k = g.below(den + 1), l = g.below(den - k + 1);
    auto lit = [&](std::size_t n) {
        Rational q(static_cast<long>(n), static_cast<long>(den));
        q.canonicalize();
        return Term::literal(Scalar(q));
    };
    Type pa = Type::partial(a);
    return {build::scale(lit(k), g.term(c, pa), a), build::scale(lit(l), g.term(c, pa), a)};
}

Term fresh_pred_like(Gen& g, const Context& c, const Term& p) {
    // a predicate equal to p, written differently
    switch (g.below(3)) {
    case 0: return build::ortho(build::ortho(p));
    case 1: return build::seq_product(c, p, top());
    default: return build::seq_product(c, top(), p);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// The catalogue

std::vector<Law> law_catalogue(const Constructions& cons) {
    std::vector<Law> laws;
    auto law = [&](std::string name, std::string statement, std::function<Sample(Gen&)> gen,
                   std::function<Outcome(const Sample&)> check) {
        laws.push_back({std::move(name), std::move(statement), std::move(gen), std::move(check)});
    };
    auto amp = [cons](const Context& c, const Term& p, const Term& q) { return cons.seq_product(c, p, q); };

    // Computation rules

    law("rule.beta", "let x (x) y = r (x) s in t = t[x:=r, y:=s]",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type(), b = g.type(), t = g.type();
            Context tc = c.extended("x", a).extended("y", b);
            return Builder{}.add("r", {}, g.term({}, a), a).add("s", {}, g.term({}, b), b).add("t", tc, g.term(tc, t), t)
                .add("ctx", c, Term::star(), Type::one()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(3).ctx;
            Term lhs = Term::let_pair("x", "y", Term::pair(s[0], s[1]), s[2]);
            Term rhs = substitute(s[2], {{"x", s[0]}, {"y", s[1]}});
            return equal(c, lhs, rhs);
        });

    for (bool left : {true, false}) {
        law(left ? "rule.beta_inl" : "rule.beta_inr",
            left ? "case inl r of inl x -> s | inr y -> t = s[x:=r]" : "case inr r of inl x -> s | inr y -> t = t[y:=r]",
            [left](Gen& g) {
                Context c = g.context(2);
                Type a = g.type(), b = g.type(), t = g.type();
                Context sc = c.extended("x", a), tc = c.extended("y", b);
                return Builder{}.add("r", {}, g.term({}, left ? a : b), left ? a : b).add("s", sc, g.term(sc, t), t)
                    .add("t", tc, g.term(tc, t), t).add("other", {}, g.value(left ? b : a), left ? b : a).done();
            },
            [left](const Sample& s) {
                const Context& c = s.piece(1).ctx;
                Context base;
                for (const auto& [x, t] : c.entries())
                    if (x != "x") base.add(x, t);
                Term scrut = left ? Term::inl(s[0], s.piece(3).type) : Term::inr(s[0], s.piece(3).type);
                Term lhs = Term::case_of(scrut, "x", s[1], "y", s[2]);
                Term rhs = left ? substitute(s[1], "x", s[0]) : substitute(s[2], "y", s[0]);
                return equal(base, lhs, rhs);
            });
    }

    for (int side : {1, 2}) {
        law("rule.beta_inlr" + std::to_string(side), side == 1 ? "rhd1 <s, t> = s" : "rhd2 <s, t> = t",
            [](Gen& g) {
                Context c = g.context(2);
                Type a = g.type(), b = g.type();
                Term u = g.term(c, Type::sum(a, b));
                return Builder{}.add("u", c, u, Type::sum(a, b)).done();
            },
            [side](const Sample& s) {
                const Context& c = s.piece(0).ctx;
                const Type& ab = s.piece(0).type;
                Term l = rhd1(s[0], ab.left()), r = rhd2(s[0], ab.right());
                Term lhs = side == 1 ? rhd1(Term::inlr(l, r), ab.left()) : rhd2(Term::inlr(l, r), ab.right());
                return equal(c, lhs, side == 1 ? l : r);
            });
    }

    law("rule.beta_left", "inl (lft t) = t when inl? t = top",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type(), b = g.type();
            Term t = g.chance(1, 2) ? Term::inl(g.term(c, a), b)
                                    : build::cond(g.scalar(), Term::inl(g.term(c, a), b), Term::inl(g.term(c, a), b));
            return Builder{}.add("t", c, t, Type::sum(a, b)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!typed(c, Term::lft(s[0]))) return vacuous("inl? t is not top");
            return equal(c, Term::inl(Term::lft(s[0]), s.piece(0).type.right()), s[0]);
        });

    law("rule.eta_left", "lft (inl t) = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type(), b = g.type();
            return Builder{}.add("t", c, g.term(c, a), a).add("other", {}, g.value(b), b).done();
        },
        [](const Sample& s) {
            return equal(s.piece(0).ctx, Term::lft(Term::inl(s[0], s.piece(1).type)), s[0]);
        });

    law("rule.instr_test", "index(instr[\\x. p](t)) = p[x:=t]",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            std::size_t n = 2 + g.below(2);
            Context xc{{"x", a}};
            return Builder{}.add("p", xc, g.term(xc, Type::n(n)), Type::n(n)).add("t", c, g.term(c, a), a).num(n).done();
        },
        [](const Sample& s) {
            Term lhs = build::index(Term::instr("x", s[0], s[1]), s.ints[0]);
            return equal(s.piece(1).ctx, lhs, substitute(s[0], "x", s[1]));
        });

    law("rule.nabla_instr", "nabla(instr[\\x. p](t)) = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            std::size_t n = 2 + g.below(2);
            Context xc{{"x", a}};
            return Builder{}.add("p", xc, g.term(xc, Type::n(n)), Type::n(n)).add("t", c, g.term(c, a), a).num(n).done();
        },
        [](const Sample& s) {
            return equal(s.piece(1).ctx, build::nabla(Term::instr("x", s[0], s[1]), s.ints[0]), s[1]);
        });

    law("rule.eta_instr", "if nabla(t) = x then instr[\\x. index(t)](s) = t[x:=s]",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            std::size_t n = 2 + g.below(2);
            Context xc{{"x", a}};
            Term t;
            switch (g.below(3)) {
            case 0: t = Term::instr("y", g.term(Context{{"y", a}}, Type::n(n)), Term::var("x")); break;
            case 1: t = build::injection(1 + g.below(n), n, Term::var("x"), a); break;
            default:
                t = build::cond(g.scalar(), build::injection(1 + g.below(n), n, Term::var("x"), a),
                                build::injection(1 + g.below(n), n, Term::var("x"), a));
            }
            return Builder{}.add("t", xc, t, Type::copower(n, a)).add("s", c, g.term(c, a), a).num(n).done();
        },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            std::size_t n = s.ints[0];
            if (!typed(xc, s[0]) || !same(xc, build::nabla(s[0], n), Term::var("x"))) return vacuous("nabla(t) is not x");
            Term lhs = Term::instr("x", build::index(s[0], n), s[1]);
            return equal(s.piece(1).ctx, lhs, substitute(s[0], "x", s[1]));
        });

    law("rule.eta_one", "t = * for t : 1",
        [](Gen& g) {
            Context c = g.context(2);
            return Builder{}.add("t", c, g.term(c, Type::one()), Type::one()).done();
        },
        [](const Sample& s) { return equal(s.piece(0).ctx, Term::star(), s[0]); });

    law("rule.eta_tensor", "let x (x) y = t in x (x) y = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type ab = Type::tensor(g.type_of_card(1 + g.below(2)), g.type_of_card(1 + g.below(2)));
            return Builder{}.add("t", c, g.term(c, ab), ab).done();
        },
        [](const Sample& s) {
            Term lhs = Term::let_pair("x", "y", s[0], Term::pair(Term::var("x"), Term::var("y")));
            return equal(s.piece(0).ctx, lhs, s[0]);
        });

    law("rule.eta_plus", "case t of inl x -> inl x | inr y -> inr y = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type ab = Type::sum(g.type_of_card(1 + g.below(2)), g.type_of_card(1 + g.below(2)));
            return Builder{}.add("t", c, g.term(c, ab), ab).done();
        },
        [](const Sample& s) {
            const Type& ab = s.piece(0).type;
            Term lhs = Term::case_of(s[0], "x", Term::inl(Term::var("x"), ab.right()), "y", Term::inr(Term::var("y"), ab.left()));
            return equal(s.piece(0).ctx, lhs, s[0]);
        });

    law("rule.eta_inlr", "<rhd1 t, rhd2 t> = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type ab = Type::sum(g.type_of_card(1 + g.below(2)), g.type_of_card(1 + g.below(2)));
            return Builder{}.add("t", c, g.term(c, ab), ab).done();
        },
        [](const Sample& s) {
            const Type& ab = s.piece(0).type;
            return equal(s.piece(0).ctx, Term::inlr(rhd1(s[0], ab.left()), rhd2(s[0], ab.right())), s[0]);
        });

    law("rule.beta_norm", "do _ <- t; return (norm t) = t",
        [](Gen& g) {
            Type a = g.type();
            Term t = g.chance(2, 3) ? build::scale(g.scalar(), build::ret(g.term({}, a)), a) : g.term({}, Type::partial(a));
            return Builder{}.add("t", {}, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Type a = s.piece(0).type.left();
            if (!typed({}, Term::norm(s[0]))) return vacuous("norm t is not defined");
            return equal({}, build::do_bind("_", s[0], build::ret(Term::norm(s[0])), a), s[0]);
        });

    law("rule.eta_norm", "if t = do _ <- t; return rho and 1/n <= dom t then rho = norm t",
        [](Gen& g) {
            Type a = g.type();
            Term rho = g.term({}, a);
            Term t = g.chance(3, 4) ? build::scale(g.scalar(), build::ret(rho), a) : g.term({}, Type::partial(a));
            return Builder{}.add("t", {}, t, Type::partial(a)).add("rho", {}, rho, a).done();
        },
        [](const Sample& s) {
            const Type a = s.piece(1).type;
            if (!typed({}, Term::norm(s[0]))) return vacuous("dom t is zero");
            if (!same({}, s[0], build::do_bind("_", s[0], build::ret(s[1]), a))) return vacuous("t is not a multiple of rho");
            return equal({}, s[1], Term::norm(s[0]));
        });

    law("rule.n_times_one_over_n", "n * (1/n) = top",
        [](Gen& g) {
            std::size_t n = 2 + g.below(std::max<std::size_t>(g.config().max_den, 2) - 1);
            return Builder{}.num(n).done();
        },
        [](const Sample& s) { return equal({}, build::multiple(s.ints[0], Term::one_over(s.ints[0]), Type::one()), top()); });

    law("rule.divide", "if n * t = top then t = 1/n",
        [](Gen& g) {
            std::size_t n = 2 + g.below(std::max<std::size_t>(g.config().max_den, 2) - 1);
            Term t = g.chance(1, 2) ? Term::literal(Scalar(1, static_cast<long>(n))) : g.term({}, Type::two());
            return Builder{}.add("t", {}, t, Type::two()).num(n).done();
        },
        [](const Sample& s) {
            std::size_t n = s.ints[0];
            Term nt = build::multiple(n, s[0], Type::one());
            if (!typed({}, nt) || !same({}, nt, top())) return vacuous("n * t is not top");
            return equal({}, s[0], Term::one_over(n));
        });

    // do: the monad laws

    law("do.left_unit", "do x <- return r; s = s[x:=r]",
        [](Gen& g) {
            Context c = g.context(1);
            Type a = g.type(), b = g.type();
            Context sc = c.extended("x", a);
            return Builder{}.add("r", {}, g.term({}, a), a).add("s", sc, g.term(sc, Type::partial(b)), Type::partial(b)).done();
        },
        [](const Sample& s) {
            Context c;
            for (const auto& [x, t] : s.piece(1).ctx.entries())
                if (x != "x") c.add(x, t);
            Term lhs = build::do_bind("x", build::ret(s[0]), s[1], s.piece(1).type.left());
            return equal(c, lhs, substitute(s[1], "x", s[0]));
        });

    law("do.fail_left", "do x <- fail; s = fail",
        [](Gen& g) {
            Context c = g.context(1);
            Type a = g.type(), b = g.type();
            Context sc = c.extended("x", a);
            return Builder{}.add("s", sc, g.term(sc, Type::partial(b)), Type::partial(b)).add("a", {}, g.value(a), a).done();
        },
        [](const Sample& s) {
            Context c;
            for (const auto& [x, t] : s.piece(0).ctx.entries())
                if (x != "x") c.add(x, t);
            const Type b = s.piece(0).type.left();
            return equal(c, build::do_bind("x", build::fail(s.piece(1).type), s[0], b), build::fail(b));
        });

    law("do.right_unit", "do x <- r; return x = r",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("r", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Type a = s.piece(0).type.left();
            return equal(s.piece(0).ctx, build::do_bind("x", s[0], build::ret(Term::var("x")), a), s[0]);
        });

    law("do.fail_right", "do _ <- r; fail = fail",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type(), b = g.type();
            return Builder{}.add("r", c, g.term(c, Type::partial(a)), Type::partial(a)).add("b", {}, g.value(b), b).done();
        },
        [](const Sample& s) {
            const Type b = s.piece(1).type;
            return equal(s.piece(0).ctx, build::do_bind("_", s[0], build::fail(b), b), build::fail(b));
        });

    law("do.associativity", "do x <- r; (do y <- s; t) = do y <- (do x <- r; s); t",
        [](Gen& g) {
            Type a = g.type_of_card(1 + g.below(3)), b = g.type_of_card(1 + g.below(3)), cty = g.type();
            Context rc = g.context(1);
            Context sc{{"x", a}}, tc{{"y", b}};
            return Builder{}.add("r", rc, g.term(rc, Type::partial(a)), Type::partial(a))
                .add("s", sc, g.term(sc, Type::partial(b)), Type::partial(b))
                .add("t", tc, g.term(tc, Type::partial(cty)), Type::partial(cty)).done();
        },
        [](const Sample& s) {
            const Type b = s.piece(1).type.left(), c = s.piece(2).type.left();
            Term lhs = build::do_bind("x", s[0], build::do_bind("y", s[1], s[2], c), c);
            Term rhs = build::do_bind("y", build::do_bind("x", s[0], s[1], b), s[2], c);
            return equal(s.piece(0).ctx, lhs, rhs);
        });

    // Kernels

    law("kernel.dom_as_do", "dom t = do _ <- t; top",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("t", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) {
            return equal(s.piece(0).ctx, build::dom(s[0]), build::do_bind("_", s[0], top(), Type::one()));
        });

    law("kernel.zero_domain_iff_fail", "dom t = bot iff t = fail",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Term t = g.term(c, Type::partial(a));
            if (g.chance(1, 3)) t = build::scale(Term::literal(Scalar::zero()), t, a);
            return Builder{}.add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!typed(c, s[0])) return fails("t is ill-typed");
            bool zero = same(c, build::dom(s[0]), bot());
            bool failing = same(c, s[0], build::fail(s.piece(0).type.left()));
            if (zero != failing) return fails(zero ? "dom t = bot but t is not fail" : "t = fail but dom t is not bot");
            return holds();
        });

    law("kernel.dom_do", "dom (do x <- s; t) = do x <- s; dom t",
        [](Gen& g) {
            Type a = g.type_of_card(1 + g.below(3)), b = g.type();
            Context sc = g.context(1);
            Context tc{{"x", a}};
            return Builder{}.add("s", sc, g.term(sc, Type::partial(a)), Type::partial(a))
                .add("t", tc, g.term(tc, Type::partial(b)), Type::partial(b)).done();
        },
        [](const Sample& s) {
            const Type b = s.piece(1).type.left();
            Term lhs = build::dom(build::do_bind("x", s[0], s[1], b));
            Term rhs = build::do_bind("x", s[0], build::dom(s[1]), Type::one());
            return equal(s.piece(0).ctx, lhs, rhs);
        });

    law("finite.rhd_point", "if rhd_i(t) = top then t = i",
        [](Gen& g) {
            Context c = g.context(2);
            std::size_t n = 2 + g.below(3), i = 1 + g.below(n);
            Term t = g.chance(1, 2) ? build::numeral(i, n) : g.term(c, Type::n(n));
            return Builder{}.add("t", c, t, Type::n(n)).num(n).num(i).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            std::size_t n = s.ints[0], i = s.ints[1];
            if (!same(c, build::rhd(s[0], n, {i}, Type::one()), top())) return vacuous("rhd_i(t) is not top");
            return equal(c, s[0], build::numeral(i, n));
        });

    // Partial sums and the order

    law("ovee.zero", "t (+) fail = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("t", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) {
            return equal(s.piece(0).ctx, Term::ovee(s[0], build::fail(s.piece(0).type.left())), s[0]);
        });

    law("ovee.commutativity", "s (+) t = t (+) s, each defined when the other is",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            auto [s, t] = g.chance(3, 4) ? summable(g, c, a)
                                         : std::pair{g.term(c, Type::partial(a)), g.term(c, Type::partial(a))};
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) { return partial_equal(s.piece(0).ctx, Term::ovee(s[0], s[1]), Term::ovee(s[1], s[0])); });

    law("ovee.associativity", "(r (+) s) (+) t is defined iff r (+) (s (+) t) is, and then they are equal",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Type pa = Type::partial(a);
            std::vector<Term> ts;
            if (g.chance(3, 4)) {
                // weights k1 + k2 + k3 <= den keep both sides defined
                std::size_t den = 1 + g.below(g.config().max_den);
                std::size_t left = den;
                for (int i = 0; i < 3; ++i) {
                    std::size_t k = g.below(left + 1);
                    left -= k;
                    Rational q(static_cast<long>(k), static_cast<long>(den));
                    q.canonicalize();
                    ts.push_back(build::scale(Term::literal(Scalar(q)), g.term(c, pa), a));
                }
            } else {
                for (int i = 0; i < 3; ++i) ts.push_back(g.term(c, pa));
            }
            return Builder{}.add("r", c, ts[0], pa).add("s", c, ts[1], pa).add("t", c, ts[2], pa).done();
        },
        [](const Sample& s) {
            return partial_equal(s.piece(0).ctx, Term::ovee(Term::ovee(s[0], s[1]), s[2]), Term::ovee(s[0], Term::ovee(s[1], s[2])));
        });

    law("ovee.leq_summands", "s <= s (+) t and t <= s (+) t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            auto [s, t] = summable(g, c, a);
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum)) return vacuous("s (+) t is not defined");
            return all({[&] { return below(c, s[0], sum); }, [&] { return below(c, s[1], sum); }});
        });

    law("ovee.leq_reflexive", "t <= t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("t", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) { return below(s.piece(0).ctx, s[0], s[0]); });

    law("ovee.fail_least", "fail <= t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("t", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) { return below(s.piece(0).ctx, build::fail(s.piece(0).type.left()), s[0]); });

    law("ovee.leq_transitive", "r <= s and s <= t imply r <= t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Type pa = Type::partial(a);
            Term t = g.term(c, pa);
            Term s = g.chance(3, 4) ? build::scale(g.scalar(), t, a) : g.term(c, pa);
            Term r = g.chance(3, 4) ? build::scale(g.scalar(), s, a) : g.term(c, pa);
            return Builder{}.add("r", c, r, pa).add("s", c, s, pa).add("t", c, t, pa).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!leq(c, s[0], s[1]) || !leq(c, s[1], s[2])) return vacuous("premises do not hold");
            return below(c, s[0], s[2]);
        });

    law("ovee.leq_monotone", "r <= s and s (+) t defined imply r (+) t <= s (+) t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            auto [s, t] = summable(g, c, a);
            Term r = g.chance(3, 4) ? build::scale(g.scalar(), s, a) : g.term(c, Type::partial(a));
            return Builder{}.add("r", c, r, Type::partial(a)).add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!leq(c, s[0], s[1]) || !typed(c, Term::ovee(s[1], s[2]))) return vacuous("premises do not hold");
            if (!typed(c, Term::ovee(s[0], s[2]))) return fails("r (+) t is not defined");
            return below(c, Term::ovee(s[0], s[2]), Term::ovee(s[1], s[2]));
        });

    law("ovee.leq_of_sum", "r (+) t = s implies r <= s",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            auto [r, t] = summable(g, c, a);
            Term s = g.chance(3, 4) ? Term::ovee(t, r) : g.term(c, Type::partial(a));
            return Builder{}.add("r", c, r, Type::partial(a)).add("t", c, t, Type::partial(a)).add("s", c, s, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum) || !typed(c, s[2]) || !same(c, sum, s[2])) return vacuous("r (+) t is not s");
            return below(c, s[0], s[2]);
        });

    law("ovee.antisymmetry", "s <= t and t <= s imply s = t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Term s = g.term(c, Type::partial(a));
            Term t = g.chance(3, 4) ? build::do_bind("v", s, build::ret(Term::var("v")), a) : g.term(c, Type::partial(a));
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!leq(c, s[0], s[1]) || !leq(c, s[1], s[0])) return vacuous("not mutually below");
            return equal(c, s[0], s[1]);
        });

    law("ovee.restricted_cancellation", "s (+) t = t implies s = fail",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Term s = g.term(c, Type::partial(a));
            if (g.chance(1, 2)) s = build::scale(Term::literal(Scalar::zero()), s, a);
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, g.term(c, Type::partial(a)), Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum) || !same(c, sum, s[1])) return vacuous("s (+) t is not t");
            return equal(c, s[0], build::fail(s.piece(0).type.left()));
        });

    law("ovee.positivity", "s (+) t = fail implies s = fail and t = fail",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            Term s = g.term(c, Type::partial(a)), t = g.term(c, Type::partial(a));
            if (g.chance(1, 2)) s = build::scale(Term::literal(Scalar::zero()), s, a);
            if (g.chance(1, 2)) t = build::do_bind("_", Term::literal(Scalar::zero()), t, a);
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term f = build::fail(s.piece(0).type.left());
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum) || !same(c, sum, f)) return vacuous("s (+) t is not fail");
            return all({[&] { return equal(c, s[0], f); }, [&] { return equal(c, s[1], f); }});
        });

    law("ovee.dom_sum", "dom (s (+) t) = dom s (+) dom t",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            auto [s, t] = summable(g, c, a);
            return Builder{}.add("s", c, s, Type::partial(a)).add("t", c, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!typed(c, Term::ovee(s[0], s[1]))) return vacuous("s (+) t is not defined");
            return equal(c, build::dom(Term::ovee(s[0], s[1])), Term::ovee(build::dom(s[0]), build::dom(s[1])));
        });

    law("ovee.case_distributes", "case r of inl x -> s (+) t | inr y -> s' (+) t' = (case r of s | s') (+) (case r of t | t')",
        [](Gen& g) {
            Type a = g.type_of_card(1 + g.below(2)), b = g.type_of_card(1 + g.below(2)), cty = g.type();
            Context rc = g.context(1);
            Context xc{{"x", a}}, yc{{"y", b}};
            auto [s, t] = summable(g, xc, cty);
            auto [s2, t2] = summable(g, yc, cty);
            Type pc = Type::partial(cty);
            return Builder{}.add("r", rc, g.term(rc, Type::sum(a, b)), Type::sum(a, b)).add("s", xc, s, pc).add("t", xc, t, pc)
                .add("s'", yc, s2, pc).add("t'", yc, t2, pc).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!typed(s.piece(1).ctx, Term::ovee(s[1], s[2])) || !typed(s.piece(3).ctx, Term::ovee(s[3], s[4])))
                return vacuous("a branch sum is not defined");
            Term lhs = Term::case_of(s[0], "x", Term::ovee(s[1], s[2]), "y", Term::ovee(s[3], s[4]));
            Term rhs = Term::ovee(Term::case_of(s[0], "x", s[1], "y", s[3]), Term::case_of(s[0], "x", s[2], "y", s[4]));
            return equal(c, lhs, rhs);
        });

    law("ovee.do_distributes", "do x <- r; s (+) t = (do x <- r; s) (+) (do x <- r; t)",
        [](Gen& g) {
            Type a = g.type_of_card(1 + g.below(3)), b = g.type();
            Context rc = g.context(1);
            Context xc{{"x", a}};
            auto [s, t] = summable(g, xc, b);
            return Builder{}.add("r", rc, g.term(rc, Type::partial(a)), Type::partial(a)).add("s", xc, s, Type::partial(b))
                .add("t", xc, t, Type::partial(b)).done();
        },
        [](const Sample& s) {
            const Type b = s.piece(1).type.left();
            if (!typed(s.piece(1).ctx, Term::ovee(s[1], s[2]))) return vacuous("s (+) t is not defined");
            Term lhs = build::do_bind("x", s[0], Term::ovee(s[1], s[2]), b);
            Term rhs = Term::ovee(build::do_bind("x", s[0], s[1], b), build::do_bind("x", s[0], s[2], b));
            return equal(s.piece(0).ctx, lhs, rhs);
        });

    law("ovee.rhd_sum", "rhd_{i1..ik}(t) = rhd_i1(t) (+) ... (+) rhd_ik(t)",
        [](Gen& g) {
            Context c = g.context(2);
            std::size_t n = 2 + g.below(3);
            Type a = g.type_of_card(1 + g.below(2));
            Builder b;
            b.add("t", c, g.term(c, Type::copower(n, a)), Type::copower(n, a)).num(n);
            for (std::size_t i = 1; i <= n; ++i)
                if (g.chance(1, 2)) b.num(i);
            return b.done();
        },
        [](const Sample& s) {
            std::size_t n = s.ints[0];
            const Type a = s.piece(0).type.left();
            std::set<std::size_t> which(s.ints.begin() + 1, s.ints.end());
            std::vector<Term> parts;
            for (std::size_t i : which) parts.push_back(build::rhd(s[0], n, {i}, a));
            return equal(s.piece(0).ctx, build::rhd(s[0], n, which, a), build::ovee_all(parts, a));
        });

    law("ovee.predicate_bound", "rhd1(b) (+) rhd2(b) = rhd12(b) for b : 3",
        [](Gen& g) {
            Context c = g.context(2);
            return Builder{}.add("b", c, g.term(c, Type::n(3)), Type::n(3)).done();
        },
        [](const Sample& s) {
            const Term& b = s[0];
            Term lhs = Term::ovee(build::rhd(b, 3, {1}, Type::one()), build::rhd(b, 3, {2}, Type::one()));
            return equal(s.piece(0).ctx, lhs, build::rhd(b, 3, {1, 2}, Type::one()));
        });

    // Effect algebra of predicates

    law("logic.excluded_middle", "p (+) p^ = top",
        [](Gen& g) {
            Context c = g.context(2);
            return Builder{}.add("p", c, g.term(c, Type::two()), Type::two()).done();
        },
        [](const Sample& s) { return equal(s.piece(0).ctx, Term::ovee(s[0], build::ortho(s[0])), top()); });

    law("logic.complement_unique", "p (+) q = top implies q = p^",
        [](Gen& g) {
            Context c = g.context(2);
            Term p = g.term(c, Type::two());
            Term q = g.chance(3, 4) ? fresh_pred_like(g, c, build::ortho(p)) : g.term(c, Type::two());
            return Builder{}.add("p", c, p, Type::two()).add("q", c, q, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum) || !same(c, sum, top())) return vacuous("p (+) q is not top");
            return equal(c, s[1], build::ortho(s[0]));
        });

    law("logic.zero_one_law", "p (+) top defined implies p = bot",
        [amp](Gen& g) {
            Context c = g.context(2);
            Term p = g.term(c, Type::two());
            if (g.chance(2, 3)) p = g.chance(1, 2) ? amp(c, p, bot()) : amp(c, Term::literal(Scalar::zero()), p);
            return Builder{}.add("p", c, p, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!typed(c, Term::ovee(s[0], top()))) return vacuous("p (+) top is not defined");
            return equal(c, s[0], bot());
        });

    law("logic.ortho_iff", "p (+) q defined iff p <= q^",
        [](Gen& g) {
            Context c = g.context(2);
            Term p = g.term(c, Type::two()), q = g.term(c, Type::two());
            if (g.chance(1, 2)) p = build::seq_product(c, build::ortho(q), p);
            return Builder{}.add("p", c, p, Type::two()).add("q", c, q, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            bool defined = typed(c, Term::ovee(s[0], s[1]));
            bool below_ortho = leq(c, s[0], build::ortho(s[1]));
            if (defined != below_ortho) return fails(defined ? "p (+) q defined but p is not below q^" : "p <= q^ but p (+) q is undefined");
            return holds();
        });

    law("logic.cancellation", "p (+) q = p (+) r implies q = r",
        [](Gen& g) {
            Context c = g.context(2);
            Term p = g.term(c, Type::two()), q = g.term(c, Type::two());
            if (g.chance(2, 3)) {
                Term w = g.term(c, Type::two());
                p = build::seq_product(c, w, p);
                q = build::seq_product(c, build::ortho(w), q);
            }
            Term r = g.chance(3, 4) ? fresh_pred_like(g, c, q) : g.term(c, Type::two());
            return Builder{}.add("p", c, p, Type::two()).add("q", c, q, Type::two()).add("r", c, r, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term pq = Term::ovee(s[0], s[1]), pr = Term::ovee(s[0], s[2]);
            if (!typed(c, pq) || !typed(c, pr) || !same(c, pq, pr)) return vacuous("p (+) q differs from p (+) r");
            return equal(c, s[1], s[2]);
        });

    law("logic.positivity", "p (+) q = bot implies p = q = bot",
        [amp](Gen& g) {
            Context c = g.context(2);
            Term p = g.term(c, Type::two()), q = g.term(c, Type::two());
            if (g.chance(2, 3)) p = amp(c, p, bot());
            if (g.chance(2, 3)) q = amp(c, bot(), q);
            return Builder{}.add("p", c, p, Type::two()).add("q", c, q, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            Term sum = Term::ovee(s[0], s[1]);
            if (!typed(c, sum) || !same(c, sum, bot())) return vacuous("p (+) q is not bot");
            return all({[&] { return equal(c, s[0], bot()); }, [&] { return equal(c, s[1], bot()); }});
        });

    law("logic.leq_top", "p <= top",
        [](Gen& g) {
            Context c = g.context(2);
            return Builder{}.add("p", c, g.term(c, Type::two()), Type::two()).done();
        },
        [](const Sample& s) { return below(s.piece(0).ctx, s[0], top()); });

    law("logic.ortho_antitone", "p <= q implies q^ <= p^",
        [](Gen& g) {
            Context c = g.context(2);
            Term q = g.term(c, Type::two());
            Term p = g.chance(3, 4) ? build::seq_product(c, q, g.term(c, Type::two())) : g.term(c, Type::two());
            return Builder{}.add("p", c, p, Type::two()).add("q", c, q, Type::two()).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            if (!leq(c, s[0], s[1])) return vacuous("p is not below q");
            return below(c, build::ortho(s[1]), build::ortho(s[0]));
        });

    law("logic.double_ortho", "p^^ = p",
        [](Gen& g) {
            Context c = g.context(2);
            return Builder{}.add("p", c, g.term(c, Type::two()), Type::two()).done();
        },
        [](const Sample& s) { return equal(s.piece(0).ctx, build::ortho(build::ortho(s[0])), s[0]); });

    // Assert maps

    auto pred_and_state = [](Gen& g) {
        Context c = g.context(2);
        Type a = g.type();
        return Builder{}.add("p", Context{{"x", a}}, g.predicate("x", a), Type::two()).add("t", c, g.term(c, a), a).done();
    };

    law("assert.typed", "assert[\\x. p](t) : A + 1", pred_and_state, [](const Sample& s) {
        const Type a = s.piece(1).type;
        std::string why;
        Term t = build::assert_("x", s[0], s[1], a);
        if (!typed(s.piece(1).ctx, t, &why)) return fails("assert is ill-typed: " + why);
        if (infer_type(s.piece(1).ctx, t) != Type::partial(a)) return fails("assert has the wrong type");
        return holds();
    });

    law("assert.below_return", "assert[\\x. p](t) <= inl t", pred_and_state, [](const Sample& s) {
        const Type a = s.piece(1).type;
        return below(s.piece(1).ctx, build::assert_("x", s[0], s[1], a), build::ret(s[1]));
    });

    law("assert.dom", "dom assert[\\x. p](t) = p[x:=t]", pred_and_state, [](const Sample& s) {
        const Type a = s.piece(1).type;
        return equal(s.piece(1).ctx, build::dom(build::assert_("x", s[0], s[1], a)), substitute(s[0], "x", s[1]));
    });

    law("assert.bijection", "if x : A |- t <= inl x then t = assert[\\x. dom t](x)",
        [](Gen& g) {
            Type a = g.type();
            Context xc{{"x", a}};
            Term t;
            switch (g.below(4)) {
            case 0: t = build::assert_("x", g.predicate("x", a), Term::var("x"), a); break;
            case 1: t = build::scale(g.scalar(), build::ret(Term::var("x")), a); break;
            case 2: {
                Term inner = build::assert_("x", g.predicate("x", a), Term::var("x"), a);
                t = build::do_bind("y", inner, build::assert_("z", g.predicate("z", a), Term::var("y"), a), a);
                break;
            }
            default: t = g.term(xc, Type::partial(a));
            }
            return Builder{}.add("t", xc, t, Type::partial(a)).done();
        },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            const Type a = s.piece(0).type.left();
            if (!typed(xc, s[0]) || !leq(xc, s[0], build::ret(Term::var("x")))) return vacuous("t is not below inl x");
            return equal(xc, s[0], build::assert_("x", build::dom(s[0]), Term::var("x"), a));
        });

    law("assert.scalar", "assert[\\_. s](*) = instr[\\_. s](*) = s",
        [](Gen& g) { return Builder{}.add("s", {}, g.term({}, Type::two()), Type::two()).done(); },
        [](const Sample& s) {
            return all({[&] { return equal({}, build::assert_("_", s[0], Term::star(), Type::one()), s[0]); },
                        [&] { return equal({}, Term::instr("_", s[0], Term::star()), s[0]); }});
        });

    law("assert.instr_sum", "instr on A + B splits into instruments on A and on B",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type_of_card(1 + g.below(2)), b = g.type_of_card(1 + g.below(2));
            Type ab = Type::sum(a, b);
            return Builder{}.add("p", Context{{"x", ab}}, g.predicate("x", ab), Type::two()).add("t", c, g.term(c, ab), ab).done();
        },
        [](const Sample& s) {
            const Type ab = s.piece(1).type, a = ab.left(), b = ab.right();
            Term pa = substitute(s[0], "x", Term::inl(Term::var("a"), b));
            Term pb = substitute(s[0], "x", Term::inr(Term::var("b"), a));
            // (inl + inl) and (inr + inr) into (A + B) + (A + B)
            auto both = [&](const Term& u, bool left) {
                auto inj = [&](const std::string& v) {
                    return left ? Term::inl(Term::var(v), b) : Term::inr(Term::var(v), a);
                };
                return Term::case_of(u, "w", Term::inl(inj("w"), ab), "w", Term::inr(inj("w"), ab));
            };
            Term rhs = Term::case_of(s[1], "y", both(Term::instr("a", pa, Term::var("y")), true), "z",
                                     both(Term::instr("b", pb, Term::var("z")), false));
            return equal(s.piece(1).ctx, Term::instr("x", s[0], s[1]), rhs);
        });

    law("assert.assert_sum", "assert on A + B splits into asserts on A and on B",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type_of_card(1 + g.below(2)), b = g.type_of_card(1 + g.below(2));
            Type ab = Type::sum(a, b);
            return Builder{}.add("p", Context{{"x", ab}}, g.predicate("x", ab), Type::two()).add("t", c, g.term(c, ab), ab).done();
        },
        [](const Sample& s) {
            const Type ab = s.piece(1).type, a = ab.left(), b = ab.right();
            Term pa = substitute(s[0], "x", Term::inl(Term::var("a"), b));
            Term pb = substitute(s[0], "x", Term::inr(Term::var("b"), a));
            Term l = build::do_bind("w", build::assert_("a", pa, Term::var("y"), a), build::ret(Term::inl(Term::var("w"), b)), ab);
            Term r = build::do_bind("w", build::assert_("b", pb, Term::var("z"), b), build::ret(Term::inr(Term::var("w"), a)), ab);
            return equal(s.piece(1).ctx, build::assert_("x", s[0], s[1], ab), Term::case_of(s[1], "y", l, "z", r));
        });

    law("assert.instr_finite", "instr[\\x. t](s) = case s of i -> case t[x:=i] of j -> in_j(i) on finite types",
        [](Gen& g) {
            Context c = g.context(2);
            std::size_t m = 2 + g.below(2), n = 2 + g.below(2);
            Context xc{{"x", Type::n(m)}};
            return Builder{}.add("t", xc, g.term(xc, Type::n(n)), Type::n(n)).add("s", c, g.term(c, Type::n(m)), Type::n(m))
                .num(m).num(n).done();
        },
        [](const Sample& s) {
            std::size_t m = s.ints[0], n = s.ints[1];
            std::vector<std::pair<std::string, Term>> outer;
            for (std::size_t i = 1; i <= m; ++i) {
                std::vector<std::pair<std::string, Term>> inner;
                for (std::size_t j = 1; j <= n; ++j) inner.emplace_back("_", build::injection(j, n, build::numeral(i, m), Type::n(m)));
                outer.emplace_back("_", build::case_copower(substitute(s[0], "x", build::numeral(i, m)), inner));
            }
            return equal(s.piece(1).ctx, Term::instr("x", s[0], s[1]), build::case_copower(s[1], outer));
        });

    law("assert.assert_finite", "assert[\\x. p](t) = case t of i -> if p[x:=i] then return i else fail on finite types",
        [](Gen& g) {
            Context c = g.context(2);
            std::size_t n = 2 + g.below(3);
            return Builder{}.add("p", Context{{"x", Type::n(n)}}, g.predicate("x", Type::n(n)), Type::two())
                .add("t", c, g.term(c, Type::n(n)), Type::n(n)).num(n).done();
        },
        [](const Sample& s) {
            std::size_t n = s.ints[0];
            std::vector<std::pair<std::string, Term>> arms;
            for (std::size_t i = 1; i <= n; ++i)
                arms.emplace_back("_", build::cond(substitute(s[0], "x", build::numeral(i, n)), build::ret(build::numeral(i, n)),
                                                   build::fail(Type::n(n))));
            return equal(s.piece(1).ctx, build::assert_("x", s[0], s[1], Type::n(n)), build::case_copower(s[1], arms));
        });

    // Sequential product

    auto two_preds = [](Gen& g) {
        Type a = g.type();
        Context xc{{"x", a}};
        return Builder{}.add("p", xc, g.term(xc, Type::two()), Type::two()).add("q", xc, g.term(xc, Type::two()), Type::two()).done();
    };
    auto three_preds = [](Gen& g) {
        Type a = g.type();
        Context xc{{"x", a}};
        return Builder{}.add("p", xc, g.term(xc, Type::two()), Type::two()).add("q", xc, g.term(xc, Type::two()), Type::two())
            .add("r", xc, g.term(xc, Type::two()), Type::two()).done();
    };

    law("seq_product.instr", "instr[p & q](x) = case instr[p](x) of inl x -> instr[q](x) | inr y -> inr y", two_preds,
        [amp](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            const Type a = *xc.lookup("x");
            Term lhs = Term::instr("x", amp(xc, s[0], s[1]), Term::var("x"));
            Term rhs = Term::case_of(Term::instr("x", s[0], Term::var("x")), "x", Term::instr("x", s[1], Term::var("x")), "y",
                                     Term::inr(Term::var("y"), a));
            return equal(xc, lhs, rhs);
        });

    law("seq_product.assert", "assert[p & q](x) = do x <- assert[p](x); assert[q](x)", two_preds, [amp](const Sample& s) {
        const Context& xc = s.piece(0).ctx;
        const Type a = *xc.lookup("x");
        Term lhs = build::assert_("x", amp(xc, s[0], s[1]), Term::var("x"), a);
        Term rhs = build::do_bind("x", build::assert_("x", s[0], Term::var("x"), a), build::assert_("x", s[1], Term::var("x"), a), a);
        return equal(xc, lhs, rhs);
    });

    law("seq_product.commutativity", "p & q = q & p", two_preds, [amp](const Sample& s) {
        const Context& xc = s.piece(0).ctx;
        return equal(xc, amp(xc, s[0], s[1]), amp(xc, s[1], s[0]));
    });

    law("seq_product.distributes_left", "(p (+) q) & r = p & r (+) q & r",
        [](Gen& g) {
            Type a = g.type();
            Context xc{{"x", a}};
            Term w = g.term(xc, Type::two());
            Term p = build::seq_product(xc, w, g.term(xc, Type::two()));
            Term q = build::seq_product(xc, build::ortho(w), g.term(xc, Type::two()));
            return Builder{}.add("p", xc, p, Type::two()).add("q", xc, q, Type::two()).add("r", xc, g.term(xc, Type::two()), Type::two()).done();
        },
        [amp](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            if (!typed(xc, Term::ovee(s[0], s[1]))) return vacuous("p (+) q is not defined");
            return equal(xc, amp(xc, Term::ovee(s[0], s[1]), s[2]), Term::ovee(amp(xc, s[0], s[2]), amp(xc, s[1], s[2])));
        });

    law("seq_product.distributes_right", "p & (q (+) r) = p & q (+) p & r",
        [](Gen& g) {
            Type a = g.type();
            Context xc{{"x", a}};
            Term w = g.term(xc, Type::two());
            Term q = build::seq_product(xc, w, g.term(xc, Type::two()));
            Term r = build::seq_product(xc, build::ortho(w), g.term(xc, Type::two()));
            return Builder{}.add("p", xc, g.term(xc, Type::two()), Type::two()).add("q", xc, q, Type::two()).add("r", xc, r, Type::two()).done();
        },
        [amp](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            if (!typed(xc, Term::ovee(s[1], s[2]))) return vacuous("q (+) r is not defined");
            return equal(xc, amp(xc, s[0], Term::ovee(s[1], s[2])), Term::ovee(amp(xc, s[0], s[1]), amp(xc, s[0], s[2])));
        });

    law("seq_product.zero", "p & bot = bot & p = bot", two_preds, [amp](const Sample& s) {
        const Context& xc = s.piece(0).ctx;
        return all({[&] { return equal(xc, amp(xc, s[0], bot()), bot()); }, [&] { return equal(xc, amp(xc, bot(), s[0]), bot()); }});
    });

    law("seq_product.unit", "p & top = top & p = p", two_preds, [amp](const Sample& s) {
        const Context& xc = s.piece(0).ctx;
        return all({[&] { return equal(xc, amp(xc, s[0], top()), s[0]); }, [&] { return equal(xc, amp(xc, top(), s[0]), s[0]); }});
    });

    law("seq_product.associativity", "p & (q & r) = (p & q) & r", three_preds, [amp](const Sample& s) {
        const Context& xc = s.piece(0).ctx;
        return equal(xc, amp(xc, s[0], amp(xc, s[1], s[2])), amp(xc, amp(xc, s[0], s[1]), s[2]));
    });

    law("seq_product.independent", "if x does not occur in q then p & q = case p of inl _ -> q | inr _ -> bot",
        [](Gen& g) {
            Type a = g.type();
            Context xc{{"x", a}};
            Context qc = g.context(1);
            return Builder{}.add("p", xc, g.term(xc, Type::two()), Type::two()).add("q", qc, g.term(qc, Type::two()), Type::two()).done();
        },
        [amp](const Sample& s) {
            Context c = s.piece(0).ctx;
            for (const auto& [y, t] : s.piece(1).ctx.entries()) c.add(y, t);
            return equal(c, amp(c, s[0], s[1]), build::cond(s[0], s[1], bot()));
        });

    law("seq_product.not_idempotent", "q & q^ = q(1 - q); in particular 1/2 & 1/2^ = 1/4, not bot",
        [](Gen& g) {
            Term q = g.chance(1, 5) ? Term::one_over(2) : g.scalar();
            return Builder{}.add("q", {}, q, Type::two()).done();
        },
        [amp](const Sample& s) {
            Rational q = eval({}, s[0], {}).weight(Value::top());
            Term prod = amp({}, s[0], build::ortho(s[0]));
            Outcome o = equal({}, prod, Term::literal(Scalar(Rational(q * (1 - q)))));
            if (o.verdict != Verdict::Holds) return o;
            if (q > 0 && q < 1 && same({}, prod, bot())) return fails("q & q^ collapsed to bot");
            return holds();
        });

    // n-tests and instruments

    law("ntest.unique", "the map of an n-test is unique: rhd_i(t) = p_i for all i determines t",
        [](Gen& g) {
            Type a = g.type();
            std::size_t n = 2 + g.below(2);
            Context xc{{"x", a}};
            return Builder{}.add("t", xc, g.term(xc, Type::n(n)), Type::n(n)).num(n).done();
        },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            std::size_t n = s.ints[0];
            std::vector<Term> ps;
            for (std::size_t i = 1; i <= n; ++i) ps.push_back(build::rhd(s[0], n, {i}, Type::one()));
            Term t = build::ntest(ps);
            for (std::size_t i = 1; i <= n; ++i) {
                Outcome o = equal(xc, build::rhd(t, n, {i}, Type::one()), ps[i - 1]);
                if (o.verdict != Verdict::Holds) return o;
            }
            return equal(xc, t, s[0]);
        });

    auto ntest_sample = [](Gen& g, std::size_t lo, std::size_t hi) {
        Type a = g.type();
        std::size_t n = lo + g.below(hi - lo + 1);
        Context xc{{"x", a}};
        Builder b;
        for (const auto& p : g.ntest("x", a, n)) b.add("p", xc, p, Type::two());
        return b.num(n);
    };

    law("ntest.instr", "in_i?(instr[ps](x)) = p_i and nabla(instr[ps](x)) = x",
        [ntest_sample](Gen& g) { return ntest_sample(g, 1, 3).done(); },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n);
            if (!is_ntest(xc, ps)) return vacuous("not an n-test");
            Term ins = build::instr_n("x", ps, Term::var("x"));
            for (std::size_t i = 1; i <= n; ++i) {
                Outcome o = equal(xc, build::in_test(i, n, ins), ps[i - 1]);
                if (o.verdict != Verdict::Holds) return o;
            }
            return equal(xc, build::nabla(ins, n), Term::var("x"));
        });

    law("ntest.assert_projection", "instr[p_i](x) and assert[p_i](x) are read off instr[ps](x)",
        [ntest_sample](Gen& g) { return ntest_sample(g, 2, 3).done(); },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            const Type a = *xc.lookup("x");
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n);
            if (!is_ntest(xc, ps)) return vacuous("not an n-test");
            Term ins = build::instr_n("x", ps, Term::var("x"));
            for (std::size_t i = 1; i <= n; ++i) {
                std::vector<std::pair<std::string, Term>> ia, aa;
                for (std::size_t j = 1; j <= n; ++j) {
                    ia.emplace_back("x", j == i ? Term::inl(Term::var("x"), a) : Term::inr(Term::var("x"), a));
                    aa.emplace_back("x", j == i ? build::ret(Term::var("x")) : build::fail(a));
                }
                Outcome o = equal(xc, Term::instr("x", ps[i - 1], Term::var("x")), build::case_copower(ins, ia));
                if (o.verdict != Verdict::Holds) return o;
                o = equal(xc, build::assert_("x", ps[i - 1], Term::var("x"), a), build::case_copower(ins, aa));
                if (o.verdict != Verdict::Holds) return o;
            }
            return holds();
        });

    law("ntest.two_test", "if (p, q) is a 2-test then q = p^ and instr[(p, q)](t) = instr[p](t)",
        [ntest_sample](Gen& g) {
            Builder b = ntest_sample(g, 2, 2);
            const Type a = *b.s.pieces[0].ctx.lookup("x");
            Context c = g.context(2);
            return b.add("t", c, g.term(c, a), a).done();
        },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            if (!is_ntest(xc, {s[0], s[1]})) return vacuous("not a 2-test");
            return all({[&] { return equal(xc, s[1], build::ortho(s[0])); },
                        [&] { return equal(s.piece(2).ctx, build::instr_n("x", {s[0], s[1]}, s[2]), Term::instr("x", s[0], s[2])); }});
        });

    // measure

    // Samples: n test predicates on x, then n arms in x : A (plus one shared variable).
    auto measure_sample = [](Gen& g, std::size_t n, std::size_t arms) {
        Type a = g.type(), b = g.type();
        Context xc{{"x", a}};
        Context ac = xc;
        if (g.chance(1, 2)) ac.add("h", g.type_of_card(1 + g.below(2)));
        Builder bld;
        for (const auto& p : g.ntest("x", a, n)) bld.add("p", xc, p, Type::two());
        for (std::size_t i = 0; i < arms; ++i) bld.add("t", ac, g.term(ac, b), b);
        return bld.num(n);
    };
    auto arms_ctx = [](const Sample& s) { return s.pieces.back().ctx; };

    law("measure.top", "measure top -> t = t",
        [measure_sample](Gen& g) { return measure_sample(g, 1, 1).done(); },
        [arms_ctx](const Sample& s) {
            Context c = arms_ctx(s);
            return equal(c, build::measure(Term::var("x"), "x", {top()}, {s[1]}), s[1]);
        });

    law("measure.bot", "a final bot arm can be dropped",
        [measure_sample](Gen& g) {
            std::size_t n = 1 + g.below(2);
            return measure_sample(g, n, n + 1).done();
        },
        [arms_ctx](const Sample& s) {
            Context c = arms_ctx(s);
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n), ts = terms_from(s, n, n + 1);
            if (!is_ntest(s.piece(0).ctx, ps)) return vacuous("not an n-test");
            std::vector<Term> ps2 = ps;
            ps2.push_back(bot());
            Term lhs = build::measure(Term::var("x"), "x", ps2, ts);
            ts.pop_back();
            return equal(c, lhs, build::measure(Term::var("x"), "x", ps, ts));
        });

    law("measure.and", "measure_i p_i -> measure_j q_ij -> t_ij = measure_ij p_i & q_ij -> t_ij",
        [](Gen& g) {
            Type a = g.type(), b = g.type();
            Context xc{{"x", a}};
            std::size_t m = 1 + g.below(2);
            Builder bld;
            for (const auto& p : g.ntest("x", a, m)) bld.add("p", xc, p, Type::two());
            bld.num(m);
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t n = 1 + g.below(2);
                bld.num(n);
                for (const auto& q : g.ntest("x", a, n)) bld.add("q", xc, q, Type::two());
                for (std::size_t j = 0; j < n; ++j) bld.add("t", xc, g.term(xc, b), b);
            }
            return bld.done();
        },
        [amp](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            std::size_t m = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, m);
            if (!is_ntest(xc, ps)) return vacuous("outer predicates are not a test");
            std::size_t k = m;
            std::vector<Term> outer_arms, all_preds, all_arms;
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t n = s.ints[1 + i];
                std::vector<Term> qs = terms_from(s, k, n), ts = terms_from(s, k + n, n);
                k += 2 * n;
                if (!is_ntest(xc, qs)) return vacuous("inner predicates are not a test");
                outer_arms.push_back(build::measure(Term::var("x"), "x", qs, ts));
                for (std::size_t j = 0; j < n; ++j) {
                    all_preds.push_back(amp(xc, ps[i], qs[j]));
                    all_arms.push_back(ts[j]);
                }
            }
            return equal(xc, build::measure(Term::var("x"), "x", ps, outer_arms), build::measure(Term::var("x"), "x", all_preds, all_arms));
        });

    law("measure.permute", "permuting the arms of a measure does not change it",
        [measure_sample](Gen& g) {
            std::size_t n = 2 + g.below(2);
            Builder b = measure_sample(g, n, n);
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[g.below(i)]);
            for (auto p : perm) b.num(p);
            return b.done();
        },
        [arms_ctx](const Sample& s) {
            Context c = arms_ctx(s);
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n), ts = terms_from(s, n, n);
            if (!is_ntest(s.piece(0).ctx, ps)) return vacuous("not an n-test");
            std::vector<Term> pp, tp;
            for (std::size_t i = 0; i < n; ++i) {
                pp.push_back(ps[s.ints[1 + i]]);
                tp.push_back(ts[s.ints[1 + i]]);
            }
            return equal(c, build::measure(Term::var("x"), "x", ps, ts), build::measure(Term::var("x"), "x", pp, tp));
        });

    law("measure.merge", "two arms with the same body merge into one arm on p_n (+) p_n+1",
        [measure_sample](Gen& g) {
            std::size_t n = 2 + g.below(2);
            return measure_sample(g, n, n - 1).done();
        },
        [arms_ctx](const Sample& s) {
            Context c = arms_ctx(s);
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n), ts = terms_from(s, n, n - 1);
            if (!is_ntest(s.piece(0).ctx, ps)) return vacuous("not an n-test");
            std::vector<Term> long_arms = ts;
            long_arms.push_back(ts.back());
            std::vector<Term> merged(ps.begin(), ps.end() - 2);
            merged.push_back(Term::ovee(ps[n - 2], ps[n - 1]));
            return equal(c, build::measure(Term::var("x"), "x", ps, long_arms), build::measure(Term::var("x"), "x", merged, ts));
        });

    law("measure.predicates", "measure p_i -> q_i = p_1 & q_1 (+) ... (+) p_n & q_n",
        [ntest_sample](Gen& g) {
            Builder b = ntest_sample(g, 1, 3);
            Context xc = b.s.pieces[0].ctx;
            for (std::size_t i = 0; i < b.s.ints[0]; ++i) b.add("q", xc, g.term(xc, Type::two()), Type::two());
            return b.done();
        },
        [amp](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n), qs = terms_from(s, n, n);
            if (!is_ntest(xc, ps)) return vacuous("not an n-test");
            std::vector<Term> parts;
            for (std::size_t i = 0; i < n; ++i) parts.push_back(amp(xc, ps[i], qs[i]));
            return equal(xc, build::measure(Term::var("x"), "x", ps, qs), build::ovee_all(parts, Type::one()));
        });

    law("measure.cond", "measure p -> q | p^ -> r = case p of inl _ -> q | inr _ -> r when x is not free in q, r",
        [](Gen& g) {
            Type a = g.type(), b = g.type();
            Context rc = g.context(1);
            return Builder{}.add("p", Context{{"x", a}}, g.predicate("x", a), Type::two()).add("q", rc, g.term(rc, b), b)
                .add("r", rc, g.term(rc, b), b).done();
        },
        [](const Sample& s) {
            Context c = s.piece(1).ctx;
            c.add("x", *s.piece(0).ctx.lookup("x"));
            Term lhs = build::measure(Term::var("x"), "x", {s[0], build::ortho(s[0])}, {s[1], s[2]});
            return equal(c, lhs, build::cond(s[0], s[1], s[2]));
        });

    law("measure.cond_top_bot", "measure p -> top | p^ -> bot = p",
        [](Gen& g) {
            Type a = g.type();
            return Builder{}.add("p", Context{{"x", a}}, g.predicate("x", a), Type::two()).done();
        },
        [](const Sample& s) {
            const Context& xc = s.piece(0).ctx;
            return equal(xc, build::measure(Term::var("x"), "x", {s[0], build::ortho(s[0])}, {top(), bot()}), s[0]);
        });

    // Scalars

    law("scalar.same_ratio", "p/q = m/n implies p * (1/q) = m * (1/n)",
        [](Gen& g) {
            std::size_t maxd = std::max<std::size_t>(g.config().max_den, 2);
            std::size_t n = 2 + g.below(maxd - 1);
            std::size_t m = g.below(n + 1);
            std::size_t k = 1 + g.below(std::max<std::size_t>(maxd / n, 1));
            return Builder{}.num(m * k).num(n * k).num(m).num(n).done();
        },
        [](const Sample& s) {
            return equal({}, build::m_over_n(s.ints[0], s.ints[1]), build::m_over_n(s.ints[2], s.ints[3]));
        });

    auto two_rationals = [](Gen& g) {
        std::size_t maxd = std::max<std::size_t>(g.config().max_den, 2);
        std::size_t n1 = 2 + g.below(maxd - 1), n2 = 2 + g.below(maxd - 1);
        return Builder{}.num(g.below(n1 + 1)).num(n1).num(g.below(n2 + 1)).num(n2).done();
    };

    law("scalar.order", "q <= r as rationals implies q <= r as scalars", two_rationals, [](const Sample& s) {
        Rational q(static_cast<long>(s.ints[0]), static_cast<long>(s.ints[1]));
        Rational r(static_cast<long>(s.ints[2]), static_cast<long>(s.ints[3]));
        q.canonicalize();
        r.canonicalize();
        Term tq = build::m_over_n(s.ints[0], s.ints[1]), tr = build::m_over_n(s.ints[2], s.ints[3]);
        if (q > r) std::swap(tq, tr);
        return below({}, tq, tr);
    });

    law("scalar.sum", "q (+) r is defined iff q + r <= 1, and then equals q + r", two_rationals, [](const Sample& s) {
        Rational q(static_cast<long>(s.ints[0]), static_cast<long>(s.ints[1]));
        Rational r(static_cast<long>(s.ints[2]), static_cast<long>(s.ints[3]));
        q.canonicalize();
        r.canonicalize();
        Term sum = Term::ovee(build::m_over_n(s.ints[0], s.ints[1]), build::m_over_n(s.ints[2], s.ints[3]));
        bool defined = typed({}, sum);
        if (defined != (q + r <= 1)) return fails(defined ? "sum defined although q + r > 1" : "sum undefined although q + r <= 1");
        if (!defined) return holds();
        return equal({}, sum, Term::literal(Scalar(Rational(q + r))));
    });

    law("scalar.product", "q & r = qr", two_rationals, [amp](const Sample& s) {
        Rational q(static_cast<long>(s.ints[0]), static_cast<long>(s.ints[1]));
        Rational r(static_cast<long>(s.ints[2]), static_cast<long>(s.ints[3]));
        Term prod = amp({}, build::m_over_n(s.ints[0], s.ints[1]), build::m_over_n(s.ints[2], s.ints[3]));
        return equal({}, prod, Term::literal(Scalar(Rational(q * r))));
    });

    // Normalisation

    law("norm.measure", "norm(measure p_i & q -> return s_i | q^ -> fail) = measure p_i -> s_i",
        [](Gen& g) {
            Type a = g.type();
            std::size_t n = 1 + g.below(3);
            Builder b;
            for (const auto& p : g.ntest("_", Type::one(), n)) b.add("p", {}, p, Type::two());
            Term q = g.scalar();
            b.add("q", {}, q, Type::two());
            for (std::size_t i = 0; i < n; ++i) b.add("s", {}, g.term({}, a), a);
            return b.num(n).done();
        },
        [amp](const Sample& s) {
            std::size_t n = s.ints[0];
            std::vector<Term> ps = terms_from(s, 0, n), ss = terms_from(s, n + 1, n);
            const Term& q = s[n];
            const Type a = s.piece(n + 1).type;
            if (!is_ntest({}, ps)) return vacuous("not an n-test");
            if (!typed({}, Term::norm(build::scale(q, build::ret(Term::star()), Type::one())))) return vacuous("q is zero");
            std::vector<Term> preds, arms;
            for (std::size_t i = 0; i < n; ++i) {
                preds.push_back(amp({}, ps[i], q));
                arms.push_back(build::ret(ss[i]));
            }
            preds.push_back(build::ortho(q));
            arms.push_back(build::fail(a));
            Term t = build::measure(Term::star(), "_", preds, arms);
            return equal({}, Term::norm(t), build::measure(Term::star(), "_", ps, ss));
        });

    law("norm.measure_rational", "norm(measure a_i -> return s_i | b -> fail) = measure a_i / (a_1 + ... + a_n) -> s_i",
        [](Gen& g) {
            Type a = g.type();
            std::size_t n = 1 + g.below(3);
            Builder b;
            for (const auto& p : g.ntest("_", Type::one(), n + 1)) b.add("a", {}, p, Type::two());
            for (std::size_t i = 0; i < n; ++i) b.add("s", {}, g.term({}, a), a);
            return b.num(n).done();
        },
        [](const Sample& s) {
            std::size_t n = s.ints[0];
            std::vector<Term> as = terms_from(s, 0, n + 1), ss = terms_from(s, n + 1, n);
            const Type a = s.piece(n + 1).type;
            if (!is_ntest({}, as)) return vacuous("weights do not sum to 1");
            std::vector<Rational> w;
            Rational total(0);
            for (std::size_t i = 0; i < n; ++i) {
                w.push_back(eval({}, as[i], {}).weight(Value::top()));
                total += w.back();
            }
            if (total == 0) return vacuous("beta is 1");
            std::vector<Term> arms, norm_preds;
            for (std::size_t i = 0; i < n; ++i) {
                arms.push_back(build::ret(ss[i]));
                norm_preds.push_back(Term::literal(Scalar(Rational(w[i] / total))));
            }
            arms.push_back(build::fail(a));
            Term t = build::measure(Term::star(), "_", as, arms);
            return equal({}, Term::norm(t), build::measure(Term::star(), "_", norm_preds, ss));
        });

    // Semantics

    law("semantics.substitution", "[[t[x:=s]]] = sum_a P(s = a) [[t]](x = a)",
        [](Gen& g) {
            Type a = g.type(), b = g.type();
            Context c = g.context(1).extended("x", a);
            return Builder{}.add("s", {}, g.term({}, a), a).add("t", c, g.term(c, b), b).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(1).ctx;
            Context rest;
            for (const auto& [y, t] : c.entries())
                if (y != "x") rest.add(y, t);
            Term st = substitute(s[1], "x", s[0]);
            std::string why;
            if (!typed(rest, st, &why)) return fails("t[x:=s] is ill-typed: " + why);
            Dist ps = eval({}, s[0], {});
            for (const auto& env : enumerate_envs(rest)) {
                Dist lhs = eval(rest, st, env);
                Dist rhs(s.piece(1).type);
                for (const auto& [a, w] : ps.weights()) {
                    Env e = env;
                    e["x"] = a;
                    Dist d = eval(c, s[1], e);
                    for (const auto& [b, v] : d.weights()) rhs.add(b, w * v);
                }
                if (lhs != rhs) return fails("{" + one_line(lhs) + "} differs from {" + one_line(rhs) + "}", env_to_string(env));
            }
            return holds();
        });

    law("semantics.soundness", "generated terms type-check and denote distributions",
        [](Gen& g) {
            Context c = g.context(2);
            Type a = g.type();
            return Builder{}.add("t", c, g.term(c, a), a).done();
        },
        [](const Sample& s) {
            const Context& c = s.piece(0).ctx;
            std::string why;
            if (!typed(c, s[0], &why)) return fails("ill-typed: " + why);
            if (infer_type(c, s[0]) != s.piece(0).type) return fails("wrong type " + infer_type(c, s[0]).to_string());
            for (const auto& [env, d] : eval_all(c, s[0]))
                if (d.mass() != 1) return fails("mass " + d.mass().get_str(), env_to_string(env));
            return holds();
        });

    return laws;
}

// ---------------------------------------------------------------------------
// Running

namespace {

std::uint64_t law_seed(std::uint64_t seed, const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ (seed * 0x9E3779B97F4A7C15ull);
}

Outcome guarded(const Law& law, const Sample& s) {
    try {
        return law.check(s);
    } catch (const std::exception& e) {
        return fails(std::string("exception: ") + e.what());
    }
}

std::vector<Term> candidates(const Piece& p) {
    std::vector<Term> out;
    std::set<std::string> seen;
    auto push = [&](const Term& t) {
        if (t.size() >= p.term.size()) return;
        if (seen.insert(t.to_string()).second) out.push_back(t);
    };
    if (p.type.cardinality() && *p.type.cardinality() > 0)
        for (const auto& v : enumerate_values(p.type)) push(value_term(v, p.type));
    if (p.type.is_two()) {
        push(Term::literal(Scalar::zero()));
        push(Term::literal(Scalar::one()));
        push(Term::one_over(2));
    }
    for (const auto& [x, t] : p.ctx.entries())
        if (t == p.type) push(Term::var(x));
    std::vector<Term> stack{p.term};
    while (!stack.empty()) {
        Term t = stack.back();
        stack.pop_back();
        for (const auto& k : t.kids()) {
            stack.push_back(k);
            try {
                if (synthesize_type(p.ctx, k) == p.type && typed(p.ctx, k)) push(k);
            } catch (const std::exception&) {
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.size() < b.size(); });
    return out;
}

Counterexample describe(const Sample& s, const Outcome& o) {
    Counterexample c;
    for (const auto& p : s.pieces)
        c.pieces.emplace_back(p.label, p.ctx.to_string() + " |- " + p.term.to_string() + " : " + p.type.to_string());
    if (!s.ints.empty()) {
        std::string ints;
        for (auto i : s.ints) ints += (ints.empty() ? "" : " ") + std::to_string(i);
        c.pieces.emplace_back("choices", ints);
    }
    c.env = o.env;
    c.detail = o.detail;
    c.size = s.size();
    return c;
}

}  // namespace

Sample shrink(const Law& law, Sample s) {
    std::size_t budget = 400;
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        for (std::size_t i = 0; i < s.pieces.size() && !improved; ++i) {
            for (const auto& c : candidates(s.pieces[i])) {
                if (budget == 0) break;
                --budget;
                Sample t = s;
                t.pieces[i].term = c;
                if (guarded(law, t).verdict == Verdict::Fails) {
                    s = std::move(t);
                    improved = true;
                    break;
                }
            }
        }
    }
    return s;
}

LawResult run_law(const Law& law, const GenConfig& cfg) {
    LawResult r;
    r.name = law.name;
    r.statement = law.statement;
    Gen g(cfg, law_seed(cfg.seed, law.name));
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        Sample s = law.generate(g);
        Outcome o = guarded(law, s);
        ++r.instances;
        if (o.verdict == Verdict::Vacuous) ++r.vacuous;
        if (o.verdict != Verdict::Fails) continue;
        ++r.failures;
        if (!r.counterexample) {
            Sample small = shrink(law, s);
            r.counterexample = describe(small, guarded(law, small));
        }
    }
    return r;
}

LawReport run_law_suite(const GenConfig& cfg, const Constructions& cons) {
    cfg.validate();
    LawReport report;
    report.seed = cfg.seed;
    if (cfg.instances == 0) return report;
    for (const auto& law : law_catalogue(cons)) report.results.push_back(run_law(law, cfg));
    return report;
}

std::size_t LawReport::failures() const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.failures;
    return n;
}

std::string LawReport::to_text() const {
    std::ostringstream out;
    std::size_t width = 4;
    for (const auto& r : results) width = std::max(width, r.name.size());
    out << "law" << std::string(width - 3 + 2, ' ') << "instances  vacuous  failures\n";
    for (const auto& r : results) {
        out << r.name << std::string(width - r.name.size() + 2, ' ');
        std::string cols[3] = {std::to_string(r.instances), std::to_string(r.vacuous), std::to_string(r.failures)};
        out << std::string(9 - std::min<std::size_t>(9, cols[0].size()), ' ') << cols[0] << "  "
            << std::string(7 - std::min<std::size_t>(7, cols[1].size()), ' ') << cols[1] << "  "
            << std::string(8 - std::min<std::size_t>(8, cols[2].size()), ' ') << cols[2] << "\n";
    }
    for (const auto& r : results) {
        if (!r.counterexample) continue;
        const auto& c = *r.counterexample;
        out << "\ncounterexample for " << r.name << " (" << r.statement << "):\n";
        for (const auto& [label, text] : c.pieces) out << "  " << label << ": " << text << "\n";
        if (!c.env.empty()) out << "  environment: " << c.env << "\n";
        out << "  " << c.detail << "\n";
    }
    out << "\n" << results.size() << " laws, " << failures() << " failures, seed " << seed << "\n";
    return out.str();
}

}  // namespace comet
