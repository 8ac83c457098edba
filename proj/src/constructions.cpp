#include "comet/constructions.hpp"

#include <stdexcept>

namespace comet::build {

namespace {

const std::string kVac = "_";
const std::string kVal = "v";

}  // namespace

Term top() { return Term::inl(Term::star(), Type::one()); }
Term bot() { return Term::inr(Term::star(), Type::one()); }
Term ret(Term t) { return Term::inl(std::move(t), Type::one()); }
Term fail(const Type& a) { return Term::inr(Term::star(), a); }

Term do_bind(const std::string& x, Term s, Term t, const Type& b) {
    return Term::case_of(std::move(s), x, std::move(t), kVac, fail(b));
}

Term scale(Term s, Term t, const Type& a) { return do_bind(kVac, std::move(s), std::move(t), a); }

Term ortho(Term p) { return Term::case_of(std::move(p), kVac, bot(), kVac, top()); }
Term inl_test(Term t) { return Term::case_of(std::move(t), kVac, top(), kVac, bot()); }
Term inr_test(Term t) { return Term::case_of(std::move(t), kVac, bot(), kVac, top()); }
Term dom(Term t) { return inl_test(std::move(t)); }
Term ker(Term t) { return inr_test(std::move(t)); }

Term cond(Term c, Term s, Term t) { return Term::case_of(std::move(c), kVac, std::move(s), kVac, std::move(t)); }

Term swap(Term t, const Type& a, const Type& b) {
    return Term::case_of(std::move(t), "x", Term::inr(Term::var("x"), b), "y", Term::inl(Term::var("y"), a));
}

Term rgt(Term t, const Type& a, const Type& b) { return Term::lft(swap(std::move(t), a, b)); }

Term proj1(Term t) { return Term::let_pair(kVal, kVac, std::move(t), Term::var(kVal)); }
Term proj2(Term t) { return Term::let_pair(kVac, kVal, std::move(t), Term::var(kVal)); }

Term numeral(std::size_t i, std::size_t n) { return injection(i, n, Term::star(), Type::one()); }

Term injection(std::size_t i, std::size_t n, Term t, const Type& a) {
    if (i == 0 || i > n) throw std::out_of_range("injection index " + std::to_string(i) + " out of 1.." + std::to_string(n));
    if (n == 1) return t;
    if (i == 1) return Term::inl(std::move(t), Type::copower(n - 1, a));
    return Term::inr(injection(i - 1, n - 1, std::move(t), a), a);
}

Term case_copower(Term t, std::vector<std::pair<std::string, Term>> arms) {
    if (arms.empty()) throw std::invalid_argument("case over 0·A needs magic, not arms");
    if (arms.size() == 1) return substitute(arms[0].second, arms[0].first, t);
    auto [x, first] = std::move(arms.front());
    arms.erase(arms.begin());
    std::set<std::string> avoid;
    for (const auto& [y, body] : arms) {
        auto fv = free_vars(body);
        avoid.insert(fv.begin(), fv.end());
        avoid.insert(y);
    }
    std::string r = fresh_name("r", avoid);
    return Term::case_of(std::move(t), x, std::move(first), r, case_copower(Term::var(r), std::move(arms)));
}

Term nabla(Term t, std::size_t n) {
    std::vector<std::pair<std::string, Term>> arms;
    for (std::size_t i = 1; i <= n; ++i) arms.emplace_back(kVal, Term::var(kVal));
    return case_copower(std::move(t), std::move(arms));
}

Term index(Term t, std::size_t n) {
    std::vector<std::pair<std::string, Term>> arms;
    for (std::size_t i = 1; i <= n; ++i) arms.emplace_back(kVac, numeral(i, n));
    return case_copower(std::move(t), std::move(arms));
}

Term rhd(Term t, std::size_t n, const std::set<std::size_t>& which, const Type& a) {
    std::vector<std::pair<std::string, Term>> arms;
    for (std::size_t i = 1; i <= n; ++i)
        arms.emplace_back(kVal, which.count(i) ? ret(Term::var(kVal)) : fail(a));
    return case_copower(std::move(t), std::move(arms));
}

Term in_test(std::size_t i, std::size_t n, Term t) {
    std::vector<std::pair<std::string, Term>> arms;
    for (std::size_t j = 1; j <= n; ++j) arms.emplace_back(kVac, j == i ? top() : bot());
    return case_copower(std::move(t), std::move(arms));
}

Term assert_(const std::string& x, Term p, Term t, const Type& a) {
    return Term::case_of(Term::instr(x, std::move(p), std::move(t)), kVal, ret(Term::var(kVal)), kVac, fail(a));
}

Term ntest(const std::vector<Term>& ps) {
    std::size_t n = ps.size();
    if (n == 0) throw std::invalid_argument("an n-test needs at least one predicate");
    std::vector<Term> parts;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(do_bind(kVac, ps[i], ret(numeral(i + 1, n)), Type::n(n)));
    return Term::lft(ovee_all(parts, Type::n(n)));
}

Term instr_n(const std::string& x, const std::vector<Term>& ps, Term t) {
    return Term::instr(x, ntest(ps), std::move(t));
}

Term measure(Term s, const std::string& x, const std::vector<Term>& ps, const std::vector<Term>& arms) {
    if (ps.size() != arms.size()) throw std::invalid_argument("measure needs one arm per predicate");
    std::vector<std::pair<std::string, Term>> branches;
    for (const auto& t : arms) branches.emplace_back(x, t);
    return case_copower(instr_n(x, ps, std::move(s)), std::move(branches));
}

Term condition(const std::string& x, Term p, Term t, const Type& a) {
    return Term::norm(assert_(x, std::move(p), std::move(t), a));
}

Term ovee_all(const std::vector<Term>& ts, const Type& a) {
    if (ts.empty()) return fail(a);
    Term acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::ovee(acc, ts[i]);
    return acc;
}

Term multiple(std::size_t n, Term t, const Type& a) { return ovee_all(std::vector<Term>(n, t), a); }

Term m_over_n(std::size_t m, std::size_t n) { return multiple(m, Term::one_over(n), Type::one()); }

Term Packing::tuple() const {
    if (vars.empty()) return Term::star();
    Term acc = Term::var(vars.back().first);
    for (std::size_t i = vars.size() - 1; i-- > 0;) acc = Term::pair(Term::var(vars[i].first), acc);
    return acc;
}

Term Packing::unpack(Term body) const {
    if (vars.size() < 2) return body;
    // let x1 (x) r1 = bound in let x2 (x) r2 = r1 in ... let x_{k-1} (x) x_k = r_{k-2} in body
    std::set<std::string> avoid = free_vars(body);
    for (const auto& [x, t] : vars) avoid.insert(x);
    avoid.insert(bound);
    std::vector<std::string> rest;
    for (std::size_t i = 0; i + 2 < vars.size(); ++i) {
        rest.push_back(fresh_name("r", avoid));
        avoid.insert(rest.back());
    }
    Term acc = std::move(body);
    for (std::size_t i = vars.size() - 1; i-- > 0;) {
        const std::string& second = i + 2 == vars.size() ? vars.back().first : rest[i];
        Term scrutinee = i == 0 ? Term::var(bound) : Term::var(rest[i - 1]);
        acc = Term::let_pair(vars[i].first, second, scrutinee, acc);
    }
    return acc;
}

Packing pack(const Context& ctx, const std::set<std::string>& names, const std::set<std::string>& avoid) {
    Packing p;
    for (const auto& [x, t] : ctx.entries())
        if (names.count(x)) p.vars.emplace_back(x, t);
    if (p.vars.empty()) {
        p.bound = kVac;
        p.type = Type::one();
    } else if (p.vars.size() == 1) {
        p.bound = p.vars[0].first;
        p.type = p.vars[0].second;
    } else {
        std::set<std::string> taken = avoid;
        for (const auto& [x, t] : ctx.entries()) taken.insert(x);
        p.bound = fresh_name("z", taken);
        Type acc = p.vars.back().second;
        for (std::size_t i = p.vars.size() - 1; i-- > 0;) acc = Type::tensor(p.vars[i].second, acc);
        p.type = acc;
    }
    return p;
}

Term seq_product(const Context& ctx, const Term& p, const Term& q) {
    auto names = free_vars(p);
    auto fq = free_vars(q);
    names.insert(fq.begin(), fq.end());
    Packing pk = pack(ctx, names, names);
    return Term::case_of(assert_(pk.bound, pk.unpack(p), pk.tuple(), pk.type), pk.bound, pk.unpack(q), kVac, bot());
}

}  // namespace comet::build

namespace comet {

const Constructions& Constructions::standard() {
    static const Constructions c;
    return c;
}

}  // namespace comet
