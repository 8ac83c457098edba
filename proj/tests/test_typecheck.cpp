#include "comet/constructions.hpp"
#include "comet/typecheck.hpp"

#include <gtest/gtest.h>

using namespace comet;
namespace b = comet::build;

namespace {

const Type two = Type::two();
Term lit(const char* text) { return Term::literal(Scalar::parse(text)); }
Term x() { return Term::var("x"); }

TypeErrorKind kind_of(const Context& c, const Term& t) {
    try {
        check_term(c, t);
    } catch (const TypeError& e) {
        return e.kind();
    }
    ADD_FAILURE() << t.to_string() << " was accepted";
    return TypeErrorKind::Mismatch;
}

// The disease example: assert_{positive_result}(subject)
Term disease_assert() {
    Term p = b::cond(x(), lit("0.8"), lit("0.096"));
    return b::assert_("x", p, lit("0.01"), two);
}

}  // namespace

TEST(Typecheck, Scalars) {
    EXPECT_EQ(infer_type({}, Term::one_over(2)), two);
    EXPECT_ANY_THROW(Term::one_over(1));
}

TEST(Typecheck, ConditioningNeedsAWitness) {
    CheckResult r = check_term({}, Term::norm(disease_assert()));
    EXPECT_EQ(r.type, two);
    ASSERT_EQ(r.judgements.size(), 1u);
    EXPECT_EQ(r.judgements[0].witness, 10u);
}

TEST(Typecheck, ContractionIsRejected) {
    Context c{{"x", two}};
    EXPECT_EQ(kind_of(c, Term::pair(x(), x())), TypeErrorKind::LinearityViolation);
    EXPECT_EQ(infer_type({}, Term::pair(Term::one_over(2), Term::one_over(2))), Type::tensor(two, two));
}

TEST(Typecheck, WeakeningIsAllowed) {
    Context c{{"x", two}, {"y", two}};
    EXPECT_EQ(infer_type(c, x()), two);
}

TEST(Typecheck, BranchesMayShareVariables) {
    Context c{{"x", two}, {"y", two}};
    Term t = Term::case_of(Term::var("y"), "_", x(), "_", b::ortho(x()));
    EXPECT_EQ(infer_type(c, t), two);
    EXPECT_EQ(kind_of(c, Term::case_of(x(), "_", x(), "_", x())), TypeErrorKind::LinearityViolation);
}

TEST(Typecheck, InstrumentTestsAreClosed) {
    Context c{{"x", two}, {"z", two}};
    EXPECT_EQ(kind_of(c, Term::instr("y", x(), Term::var("z"))), TypeErrorKind::LinearityViolation);
    EXPECT_EQ(infer_type(c, Term::instr("y", Term::var("y"), Term::var("z"))), Type::copower(2, two));
}

TEST(Typecheck, UnboundVariable) { EXPECT_EQ(kind_of({}, x()), TypeErrorKind::UnboundVar); }

TEST(Typecheck, SideConditions) {
    EXPECT_EQ(kind_of({}, Term::ovee(lit("3/4"), lit("1/2"))), TypeErrorKind::SideConditionFailed);
    EXPECT_EQ(kind_of({}, Term::lft(Term::one_over(2))), TypeErrorKind::SideConditionFailed);
    EXPECT_EQ(kind_of({}, Term::inlr(lit("1/3"), lit("1/3"))), TypeErrorKind::SideConditionFailed);
    EXPECT_EQ(kind_of({}, Term::norm(b::fail(two))), TypeErrorKind::SideConditionFailed);
    try {
        check_term({}, Term::ovee(lit("3/4"), lit("1/2")));
    } catch (const TypeError& e) {
        EXPECT_EQ(e.rule(), "Tovee");
        EXPECT_EQ(e.which(), "Disjoint");
    }
}

TEST(Typecheck, Equality) {
    Context c{{"x", two}};
    EXPECT_TRUE(check_equal(c, Term::ovee(x(), b::ortho(x())), b::top(), two));
    EXPECT_TRUE(check_equal(c, x(), x(), two));
    EXPECT_FALSE(check_equal({}, Term::one_over(2), Term::one_over(3), two));
}

TEST(Typecheck, Order) {
    Context c{{"x", two}};
    EXPECT_TRUE(check_leq(c, b::fail(two), b::ret(x()), Type::partial(two)));
    Term p = b::cond(x(), lit("0.8"), lit("0.096"));
    EXPECT_TRUE(check_leq(c, b::assert_("x", p, x(), two), b::ret(x()), Type::partial(two)));
    EXPECT_FALSE(check_leq({}, b::ret(Term::star()), Term::one_over(2), Type::partial(Type::one())));
}

TEST(Typecheck, Disjointness) {
    Term a = b::scale(lit("0.008"), b::ret(b::top()), two);
    Term c = b::scale(lit("0.09504"), b::ret(b::bot()), two);
    EXPECT_TRUE(check_disjoint({}, a, c));
    EXPECT_TRUE(check_disjoint({}, b::ret(b::top()), b::fail(two)));
    EXPECT_FALSE(check_disjoint({}, b::ret(b::top()), b::ret(b::top())));
}

TEST(Typecheck, Witnesses) {
    EXPECT_EQ(check_nonzero_domain({}, disease_assert()), 10u);
    EXPECT_EQ(check_nonzero_domain({}, b::ret(Term::star())), 2u);
    EXPECT_THROW(check_nonzero_domain({}, b::fail(Type::one())), ZeroDomain);
}

TEST(Typecheck, EmptyEnumIsRejected) {
    auto e = std::make_shared<EnumDecl>(EnumDecl{"Nothing", {}});
    EXPECT_THROW(validate_type(Type::constant(e)), TypeError);
}
