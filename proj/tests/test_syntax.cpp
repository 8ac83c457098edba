#include "comet/constructions.hpp"
#include "comet/semantics.hpp"
#include "comet/syntax.hpp"

#include <gtest/gtest.h>

using namespace comet;

namespace {
Term v(const char* x) { return Term::var(x); }
const Type two = Type::two();
}

TEST(Syntax, SubstituteVariable) {
    EXPECT_TRUE(alpha_equal(substitute(v("x"), "x", Term::star()), Term::star()));
}

TEST(Syntax, SubstituteUnderDisjointBinders) {
    Term t = Term::case_of(v("y"), "x", v("x"), "z", v("z"));
    Term r = Term::inl(Term::star(), Type::one());
    EXPECT_TRUE(alpha_equal(substitute(t, "y", r), Term::case_of(r, "x", v("x"), "z", v("z"))));
}

TEST(Syntax, SubstituteIntoLetPairAgreesSemantically) {
    Term body = Term::pair(v("x"), v("y"));
    Term t = Term::let_pair("x", "y", v("w"), body);
    Term s = Term::pair(Term::star(), Term::star());
    Term expected = Term::let_pair("x", "y", s, body);
    Term got = substitute(t, "w", s);
    EXPECT_TRUE(alpha_equal(got, expected));
    EXPECT_EQ(eval({}, got, {}), eval({}, expected, {}));
}

TEST(Syntax, SubstitutionAvoidsCapture) {
    // (case r of inl y -> x | inr z -> z)[x := y] must not capture y
    Term t = Term::case_of(v("r"), "y", v("x"), "z", v("z"));
    Term got = substitute(t, "x", v("y"));
    EXPECT_EQ(free_vars(got), (std::set<std::string>{"r", "y"}));
}

TEST(Syntax, AlphaEquality) {
    Term r = v("r");
    EXPECT_TRUE(alpha_equal(Term::case_of(r, "x", v("x"), "y", v("y")), Term::case_of(r, "a", v("a"), "b", v("b"))));
    EXPECT_FALSE(alpha_equal(v("x"), v("y")));
    Term top = Term::inl(Term::star(), Type::one());
    EXPECT_TRUE(alpha_equal(Term::instr("x", top, v("s")), Term::instr("z", top, v("s"))));
    EXPECT_FALSE(alpha_equal(Term::case_of(r, "x", v("x"), "y", v("x")), Term::case_of(r, "a", v("a"), "b", v("b"))));
}

TEST(Syntax, FreeVariables) {
    EXPECT_EQ(free_vars(v("x")), (std::set<std::string>{"x"}));
    EXPECT_EQ(free_vars(Term::let_pair("x", "y", v("z"), Term::pair(v("x"), v("y")))), (std::set<std::string>{"z"}));
    EXPECT_EQ(free_vars(Term::ovee(v("p"), v("q"))), (std::set<std::string>{"p", "q"}));
    EXPECT_TRUE(free_vars(Term::instr("x", v("x"), Term::star())).empty());
}

TEST(Syntax, Types) {
    EXPECT_EQ(two, Type::sum(Type::one(), Type::one()));
    EXPECT_EQ(Type::n(3).as_n(), 3u);
    EXPECT_EQ(Type::copower(3, two).cardinality(), 6u);
    EXPECT_TRUE(Type::copower(3, two).is_copower_of(3, two));
    EXPECT_EQ(Type::tensor(two, Type::n(3)).cardinality(), 6u);
    EXPECT_EQ(Type::partial(two).to_string(), "2 + 1");
}

TEST(Syntax, Contexts) {
    Context c{{"x", two}};
    EXPECT_THROW(c.add("x", two), std::invalid_argument);
    Context d = c.extended("y", Type::one());
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(c.size(), 1u);
    EXPECT_EQ(*d.lookup("y"), Type::one());
    EXPECT_EQ(d.restricted({"y"}).size(), 1u);
}

TEST(Syntax, FreshNames) {
    EXPECT_EQ(fresh_name("x", {"y"}), "x");
    EXPECT_NE(fresh_name("x", {"x", "x1"}), "x");
    EXPECT_EQ(fresh_name("x", {"x", "x1"}).rfind("x", 0), 0u);
}

TEST(Syntax, TermSize) {
    EXPECT_EQ(Term::star().size(), 1u);
    EXPECT_EQ(Term::pair(Term::star(), v("x")).size(), 3u);
}
