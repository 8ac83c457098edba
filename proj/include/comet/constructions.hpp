#pragma once

#include "comet/syntax.hpp"

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Derived forms, expanded into core terms.
namespace comet::build {

Term top();
Term bot();
/// return t : A + 1
Term ret(Term t);
/// fail : A + 1
Term fail(const Type& a);

/// do x <- s; t, where t : B + 1
Term do_bind(const std::string& x, Term s, Term t, const Type& b);
/// Scales t : A + 1 by the scalar s.
Term scale(Term s, Term t, const Type& a);

Term ortho(Term p);
Term inl_test(Term t);
Term inr_test(Term t);
Term dom(Term t);
Term ker(Term t);
/// if c then s else t, as a case on c.
Term cond(Term c, Term s, Term t);

/// t : A + B to B + A
Term swap(Term t, const Type& a, const Type& b);
Term rgt(Term t, const Type& a, const Type& b);

Term proj1(Term t);
Term proj2(Term t);

// Copowers n·A, right-nested.

/// The numeral i : n (1-based).
Term numeral(std::size_t i, std::size_t n);
/// in_i^n(t) : n·A
Term injection(std::size_t i, std::size_t n, Term t, const Type& a);
/// case t of in_1 x_1 -> t_1 | ... | in_n x_n -> t_n
Term case_copower(Term t, std::vector<std::pair<std::string, Term>> arms);
/// ∇(t) : A
Term nabla(Term t, std::size_t n);
/// The index of t : n·A, as a numeral.
Term index(Term t, std::size_t n);
/// Partial projection onto the components in `which` (1-based).
Term rhd(Term t, std::size_t n, const std::set<std::size_t>& which, const Type& a);
/// Predicate testing whether t : n·A lies in component i.
Term in_test(std::size_t i, std::size_t n, Term t);

// Instruments and tests.

/// assert_{λx p}(t) : A + 1
Term assert_(const std::string& x, Term p, Term t, const Type& a);
/// The n-valued test whose i-th partial projection is p_i. Requires p_1 ⊕ ... ⊕ p_n = ⊤.
Term ntest(const std::vector<Term>& ps);
/// instr_{(p_1..p_n)}(t) : n·A
Term instr_n(const std::string& x, const std::vector<Term>& ps, Term t);
/// measure over the subject s bound to x: p_i -> t_i.
Term measure(Term s, const std::string& x, const std::vector<Term>& ps, const std::vector<Term>& arms);

/// t | p = norm(assert_p(t))
Term condition(const std::string& x, Term p, Term t, const Type& a);

/// s_1 ⊕ ... ⊕ s_k (left-nested); fail when empty.
Term ovee_all(const std::vector<Term>& ts, const Type& a);
/// n·t = t ⊕ ... ⊕ t
Term multiple(std::size_t n, Term t, const Type& a);
/// m·(1/n) as an iterated partial sum.
Term m_over_n(std::size_t m, std::size_t n);

/// Several free variables bundled into one, so that a test over them can be written with a single bound variable.
struct Packing {
    std::vector<std::pair<std::string, Type>> vars;
    std::string bound;  // the bundling variable
    Type type;

    /// x1 (x) (x2 (x) ...), or * when there are no variables.
    Term tuple() const;
    /// Rebinds every packed variable from `bound` inside `body`.
    Term unpack(Term body) const;
};

/// Packs the variables of `ctx` that occur in `names`, in context order.
Packing pack(const Context& ctx, const std::set<std::string>& names, const std::set<std::string>& avoid);

/// p & q = do x <- assert_p(x); q, over the free variables of p and q.
Term seq_product(const Context& ctx, const Term& p, const Term& q);

}  // namespace comet::build

namespace comet {

/// Replaceable constructions, so tests can substitute a faulty one.
struct Constructions {
    std::function<Term(const Context&, const Term&, const Term&)> seq_product = build::seq_product;

    static const Constructions& standard();
};

}  // namespace comet
