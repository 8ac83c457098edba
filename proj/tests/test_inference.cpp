#include "comet/constructions.hpp"
#include "comet/inference.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace comet;

namespace {

const Type two = Type::two();

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(COMET_CORPUS) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Predicate pred(Term body) { return {"x", two, std::move(body)}; }

Dist coin(long n, long d) {
    Dist s(two);
    s.add(Value::top(), Rational(n, d));
    s.add(Value::bot(), 1 - Rational(n, d));
    return s;
}

Predicate positive_result() {
    return pred(build::cond(Term::var("x"), Term::literal(Scalar(8, 10)), Term::literal(Scalar(96, 1000))));
}

}  // namespace

TEST(Inference, AssertOnTheDiseaseState) {
    SubDist a = assert_state(coin(1, 100), positive_result());
    EXPECT_EQ(a.mass(), Rational(322, 3125));
    EXPECT_EQ(a.weight(Value::top()), Rational(1, 125));
    EXPECT_EQ(a.weight(Value::bot()), Rational(297, 3125));
    EXPECT_EQ(assert_state(coin(1, 3), pred(build::top())).dist(), coin(1, 3));
    EXPECT_EQ(assert_state(coin(1, 3), pred(build::bot())).mass(), 0);
}

TEST(Inference, Normalize) {
    Dist post = normalize(assert_state(coin(1, 100), positive_result()));
    EXPECT_EQ(post.weight(Value::top()), Rational(25, 322));
    EXPECT_EQ(to_fixed(post.weight(Value::top()), 4), "0.0776");
    EXPECT_EQ(to_fixed(post.weight(Value::bot()), 4), "0.9224");
    EXPECT_EQ(normalize(SubDist(coin(2, 7))), coin(2, 7));
    Dist quarter(two);
    quarter.add(Value::top(), Rational(1, 4));
    EXPECT_EQ(normalize(SubDist(quarter)), coin(1, 1));
    EXPECT_THROW(normalize(SubDist(Dist(two))), ZeroMass);
}

TEST(Inference, Condition) {
    EXPECT_EQ(condition(coin(1, 100), positive_result()).weight(Value::top()), Rational(25, 322));
    EXPECT_EQ(condition(coin(3, 8), pred(build::top())), coin(3, 8));
    EXPECT_EQ(condition(coin(1, 2), pred(Term::var("x"))), coin(1, 1));
}

TEST(Inference, Validity) {
    EXPECT_EQ(validity(coin(1, 100), positive_result()), Rational(322, 3125));
    EXPECT_EQ(validity(coin(1, 100), pred(build::top())), 1);
}

TEST(Inference, Marginals) {
    Dist joint = eval({}, Term::pair(Term::literal(Scalar(1, 3)), Term::literal(Scalar(1, 5))), {});
    EXPECT_EQ(marginal(joint, 1), coin(1, 3));
    EXPECT_EQ(marginal(joint, 2), coin(1, 5));
    Dist point = Dist::dirac(Type::tensor(two, two), Value::pair(Value::bot(), Value::top()));
    EXPECT_EQ(marginal(point, 1), Dist::dirac(two, Value::bot()));
    EXPECT_THROW(marginal(coin(1, 2), 1), NotATensor);
}

TEST(Inference, DiseaseProgram) {
    Program p = load_program(slurp("disease.comet"));
    Inference r = infer(p, "subject", "positive_result");
    EXPECT_EQ(r.validity, Rational(322, 3125));
    EXPECT_EQ(r.witness, 10u);
    EXPECT_EQ(r.posterior.weight(Value::top()), Rational(25, 322));
    EXPECT_EQ(r.posterior.weight(Value::bot()), Rational(297, 322));
}

TEST(Inference, BurglaryProgram) {
    Program p = load_program(slurp("burglary.comet"));
    Inference r = infer(p, "prior", "alarm_call", 1);
    EXPECT_EQ(r.validity, Rational(521389757, 10000000000UL));
    EXPECT_EQ(r.witness, 20u);
    auto at = [&](Value b, Value e) { return r.asserted.weight(Value::pair(b, e)); };
    EXPECT_EQ(at(Value::top(), Value::top()), Rational(343, 200000000));
    EXPECT_EQ(at(Value::top(), Value::bot()), Rational(423651, 500000000));
    EXPECT_EQ(at(Value::bot(), Value::top()), Rational(592407, 1000000000));
    EXPECT_EQ(at(Value::bot(), Value::bot()), Rational(506975517, 10000000000UL));
    EXPECT_EQ(r.posterior.weight(Value::pair(Value::top(), Value::top())), Rational(2450, 74484251));
    ASSERT_TRUE(r.marginal);
    EXPECT_EQ(r.marginal->weight(Value::top()), Rational(8490170, 521389757));
    EXPECT_EQ(r.marginal->weight(Value::bot()), Rational(512899587, 521389757));
}

TEST(Inference, JointPrior) {
    Program p = load_program(slurp("burglary.comet"));
    Dist prior = state_of(*p.find("prior"));
    EXPECT_EQ(prior.weight(Value::pair(Value::top(), Value::top())), Rational(1, 1000) * Rational(2, 1000));
    EXPECT_EQ(prior.weight(Value::pair(Value::bot(), Value::bot())), Rational(999, 1000) * Rational(998, 1000));
}

TEST(Inference, Errors) {
    Program p = load_program("def s : 2 = 1/2\ndef never(x : 2) : 2 = 0\ndef f(x : 2) : 2 = x\ndef u : 2 (x) 2 = 1/2 (x) 1/2");
    EXPECT_THROW(infer(p, "s", "never"), ZeroMass);
    EXPECT_EQ(validity(p, "s", "never"), 0);
    EXPECT_THROW(state_of(*p.find("f")), NotClosed);
    EXPECT_THROW(infer(p, "u", "f"), TypeError);
    EXPECT_THROW(infer(p, "s", "f", 1), NotATensor);
    EXPECT_THROW(infer(p, "s", "missing"), ElaborationError);
}
