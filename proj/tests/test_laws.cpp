#include "comet/laws.hpp"
#include "comet/typecheck.hpp"

#include <gtest/gtest.h>

using namespace comet;

namespace {

GenConfig small(std::size_t instances) {
    GenConfig c;
    c.instances = instances;
    return c;
}

const Law& find(const std::vector<Law>& laws, const std::string& name) {
    for (const auto& l : laws)
        if (l.name == name) return l;
    throw std::out_of_range(name);
}

}  // namespace

TEST(Laws, GeneratedTermsAreWellTyped) {
    Gen g(GenConfig{}, 7);
    for (int i = 0; i < 300; ++i) {
        Context c = g.context(2);
        Type a = g.type();
        ASSERT_LE(*a.cardinality(), 4u);
        Term t = g.term(c, a);
        ASSERT_EQ(infer_type(c, t), a) << t.to_string();
    }
}

TEST(Laws, GeneratedPredicatesAreInvolutive) {
    Gen g(GenConfig{}, 11);
    for (int i = 0; i < 100; ++i) {
        Type a = g.type();
        Context c{{"x", a}};
        Term p = g.predicate("x", a);
        EXPECT_TRUE(check_equal(c, build::ortho(build::ortho(p)), p, Type::two()));
    }
}

TEST(Laws, OrthogonalPredicatesSum) {
    Gen g(GenConfig{}, 3);
    for (int i = 0; i < 100; ++i) {
        Type a = g.type();
        Context c{{"x", a}};
        Term p = g.predicate("x", a), q = g.predicate("x", a);
        if (!check_leq(c, p, build::ortho(q), Type::two())) continue;
        EXPECT_EQ(infer_type(c, Term::ovee(p, q)), Type::two());
    }
}

TEST(Laws, GeneratedNTestsSumToTop) {
    Gen g(GenConfig{}, 5);
    for (int i = 0; i < 100; ++i) {
        Type a = g.type();
        Context c{{"x", a}};
        std::size_t n = 1 + g.below(3);
        auto ps = g.ntest("x", a, n);
        ASSERT_EQ(ps.size(), n);
        EXPECT_TRUE(check_equal(c, build::ovee_all(ps, Type::one()), build::top(), Type::two()));
    }
}

TEST(Laws, GenerationIsDeterministic) {
    Gen a(GenConfig{}, 99), b(GenConfig{}, 99);
    for (int i = 0; i < 50; ++i) {
        Type ta = a.type(), tb = b.type();
        ASSERT_EQ(ta, tb);
        EXPECT_EQ(a.term({}, ta).to_string(), b.term({}, tb).to_string());
    }
}

TEST(Laws, NamesAreUnique) {
    std::set<std::string> names;
    for (const auto& l : law_catalogue()) EXPECT_TRUE(names.insert(l.name).second) << l.name;
    for (const char* required : {"ovee.associativity", "logic.zero_one_law", "logic.cancellation", "logic.positivity",
                                 "seq_product.commutativity", "seq_product.not_idempotent", "do.associativity",
                                 "assert.below_return", "assert.bijection", "measure.top", "measure.bot", "measure.and",
                                 "measure.permute", "measure.merge", "scalar.sum", "scalar.product", "rule.beta_norm",
                                 "rule.eta_norm", "semantics.substitution"})
        EXPECT_TRUE(names.count(required)) << required;
}

TEST(Laws, SmokeRunHasNoFailures) {
    LawReport r = run_law_suite(small(10));
    EXPECT_EQ(r.failures(), 0u) << r.to_text();
    for (const auto& l : r.results) EXPECT_EQ(l.instances, 10u);
}

TEST(Laws, NoInstancesGivesAnEmptyReport) {
    LawReport r = run_law_suite(small(0));
    EXPECT_TRUE(r.results.empty());
    EXPECT_TRUE(r.ok());
}

TEST(Laws, ZeroBoundsAreRejected) {
    GenConfig c;
    c.max_card = 0;
    EXPECT_THROW(run_law_suite(c), std::invalid_argument);
}

TEST(Laws, ReportsAreReproducible) {
    EXPECT_EQ(run_law_suite(small(5)).to_text(), run_law_suite(small(5)).to_text());
}

TEST(Laws, LeftProjectionIsCaughtByCommutativity) {
    Constructions broken;
    broken.seq_product = [](const Context&, const Term& p, const Term&) { return p; };
    auto laws = law_catalogue(broken);
    LawResult r = run_law(find(laws, "seq_product.commutativity"), small(50));
    EXPECT_GT(r.failures, 0u);
    ASSERT_TRUE(r.counterexample);
    EXPECT_FALSE(r.counterexample->detail.empty());
    EXPECT_EQ(r.counterexample->pieces.size(), 2u);
}

TEST(Laws, CounterexamplesAreShrunk) {
    Constructions broken;
    broken.seq_product = [](const Context&, const Term& p, const Term&) { return p; };
    auto laws = law_catalogue(broken);
    const Law& law = find(laws, "seq_product.commutativity");
    Gen g(GenConfig{}, 1);
    for (int i = 0; i < 100; ++i) {
        Sample s = law.generate(g);
        if (law.check(s).verdict != Verdict::Fails) continue;
        Sample small = shrink(law, s);
        EXPECT_EQ(law.check(small).verdict, Verdict::Fails);
        EXPECT_LE(small.size(), s.size());
        // both predicates end up as single literals or variables
        EXPECT_LE(small[0].size(), 3u) << small[0].to_string();
        EXPECT_LE(small[1].size(), 3u) << small[1].to_string();
        return;
    }
    FAIL() << "no failing instance generated";
}

TEST(Laws, ValueTerms) {
    Type t = Type::sum(Type::tensor(Type::two(), Type::one()), Type::n(3));
    for (const auto& v : enumerate_values(t)) {
        Term term = value_term(v, t);
        EXPECT_EQ(infer_type({}, term), t);
        EXPECT_EQ(eval({}, term, {}).weight(v), 1);
    }
}
