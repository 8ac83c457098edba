#include "comet/constructions.hpp"
#include "comet/semantics.hpp"

#include <gtest/gtest.h>

using namespace comet;
namespace b = comet::build;

namespace {
const Type two = Type::two();
Term lit(long n, long d) { return Term::literal(Scalar(n, d)); }
Rational q(long n, long d) { return Rational(n, d); }
}

TEST(Semantics, EnumerateValues) {
    EXPECT_EQ(enumerate_values(two), (std::vector<Value>{Value::top(), Value::bot()}));
    EXPECT_EQ(enumerate_values(Type::tensor(Type::one(), Type::one())), (std::vector<Value>{Value::pair(Value(), Value())}));
    EXPECT_EQ(enumerate_values(Type::tensor(two, two)).size(), 4u);
    EXPECT_TRUE(enumerate_values(Type::zero()).empty());
}

TEST(Semantics, IndependentHalves) {
    Dist d = eval({}, Term::pair(Term::one_over(2), Term::one_over(2)), {});
    ASSERT_EQ(d.weights().size(), 4u);
    for (const auto& [v, w] : d.weights()) EXPECT_EQ(w, q(1, 4)) << v.to_string();
}

TEST(Semantics, Dirac) {
    Dist d = eval({}, b::top(), {});
    EXPECT_EQ(d.weight(Value::top()), 1);
    EXPECT_EQ(d.weights().size(), 1u);
}

TEST(Semantics, InstrumentOfTheDiseaseTest) {
    Context c{{"x", two}};
    Term p = b::cond(Term::var("x"), lit(8, 10), lit(96, 1000));
    Dist d = eval(c, Term::instr("x", p, Term::var("x")), {{"x", Value::top()}});
    EXPECT_EQ(d.weight(Value::injection(1, 2, Value::top())), q(4, 5));
    EXPECT_EQ(d.weight(Value::injection(2, 2, Value::top())), q(1, 5));
    EXPECT_EQ(d.mass(), 1);
}

TEST(Semantics, EvalAllEnumeratesEnvironments) {
    EXPECT_EQ(eval_all({}, b::top()).size(), 1u);
    EXPECT_EQ(eval_all({{"x", two}}, Term::var("x")).size(), 2u);
    Context c{{"x", two}, {"y", two}};
    auto all = eval_all(c, Term::pair(Term::var("x"), Term::var("y")));
    ASSERT_EQ(all.size(), 4u);
    for (const auto& [env, d] : all) EXPECT_EQ(d.weight(Value::pair(env.at("x"), env.at("y"))), 1);
}

TEST(Semantics, NormRescales) {
    Term t = Term::ovee(b::scale(lit(1, 5), b::ret(b::top()), two), b::scale(lit(1, 20), b::ret(b::bot()), two));
    Dist d = eval({}, Term::norm(t), {});
    EXPECT_EQ(d.weight(Value::top()), q(4, 5));
    EXPECT_EQ(d.weight(Value::bot()), q(1, 5));
}

TEST(Semantics, OveeAdds) {
    Dist d = eval({}, Term::ovee(lit(1, 3), lit(1, 2)), {});
    EXPECT_EQ(d.weight(Value::top()), q(5, 6));
}

TEST(Semantics, OneOverN) {
    EXPECT_EQ(eval({}, Term::one_over(7), {}).weight(Value::top()), q(1, 7));
}

TEST(Semantics, LeftOfACertainInjection) {
    Term t = Term::lft(Term::inl(Term::one_over(3), Type::one()));
    EXPECT_EQ(eval({}, t, {}).weight(Value::top()), q(1, 3));
}

TEST(Semantics, InlrCombines) {
    // dom 1/3 = 1/3 = ker 2/3
    Term t = Term::inlr(lit(1, 3), lit(2, 3));
    Dist d = eval({}, t, {});
    EXPECT_EQ(d.weight(Value::top()), q(1, 3));
    EXPECT_EQ(d.weight(Value::bot()), q(2, 3));
}

TEST(Semantics, CopowerInjections) {
    Value v = Value::injection(3, 3, Value::bot());
    auto [i, payload] = v.split_copower(3);
    EXPECT_EQ(i, 3u);
    EXPECT_EQ(payload, Value::bot());
    EXPECT_EQ(enumerate_values(Type::n(3))[1], Value::injection(2, 3, Value()));
}
