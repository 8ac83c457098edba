#include "comet/semantics.hpp"
#include "comet/surface.hpp"

#include <gtest/gtest.h>

using namespace comet;

namespace {

const Type two = Type::two();

Dist closed(const char* source) { return eval({}, compile_expression(source), {}); }

Rational top_weight(const char* source) { return closed(source).weight(Value::top()); }

template <class E>
std::string error_of(const char* program) {
    try {
        load_program(program);
    } catch (const E& e) {
        return e.what();
    }
    return "accepted";
}

TypeErrorKind type_error(const char* program) {
    try {
        load_program(program);
    } catch (const TypeError& e) {
        return e.kind();
    }
    ADD_FAILURE() << program << " was accepted";
    return TypeErrorKind::Mismatch;
}

}  // namespace

TEST(Surface, ParsesDefinitions) {
    SurfaceProgram p = parse("def s : 2 = 0.01\ndef t(x : 2) : 2 = if x then 0.8 else 0.096");
    ASSERT_EQ(p.defs.size(), 2u);
    EXPECT_EQ(p.defs[0].body->kind, SKind::Scalar);
    EXPECT_EQ(p.defs[0].body->scalar, Scalar(1, 100));
    EXPECT_EQ(p.defs[1].body->kind, SKind::If);
    EXPECT_EQ(p.defs[1].params.size(), 1u);
}

TEST(Surface, ParsesDo) {
    SurfaceTerm t = parse_expression("do x <- s; return x");
    EXPECT_EQ(t->kind, SKind::Do);
}

TEST(Surface, ParsesQueries) {
    SurfaceProgram p = parse("def s : 2 = 1/2\ndef p(x : 2) : 2 = x\nquery infer s given p\nquery eval s");
    ASSERT_EQ(p.queries.size(), 2u);
    EXPECT_EQ(p.queries[0].to_string(), "infer s given p");
    EXPECT_EQ(p.queries[1].kind, Query::Kind::Eval);
}

TEST(Surface, ParseErrorsCarryPositions) {
    try {
        parse("def s : 2 =\n  (0.5");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.span().line, 2);
    }
    EXPECT_THROW(parse("def : 2 = 1"), ParseError);
    EXPECT_THROW(parse("def s : 2 = 1.5"), ParseError);
}

TEST(Surface, DomainOfTheDiseaseAssert) {
    Program p = load_program("def subject : 2 = 0.01\ndef positive_result(x : 2) : 2 = if x then 0.8 else 0.096");
    Term t = compile_expression("dom assert[positive_result](subject)", {}, &p);
    EXPECT_EQ(eval({}, t, {}).weight(Value::top()), Rational(322, 3125));
}

TEST(Surface, SequentialProductOfScalars) {
    EXPECT_EQ(top_weight("1/2 & 1/2"), Rational(1, 4));
    EXPECT_EQ(top_weight("1/2 & 1/2^"), Rational(1, 4));
    EXPECT_EQ(top_weight("0.01 & 0.8 (+) 0.01^ & 0.096"), Rational(322, 3125));
}

TEST(Surface, MeasureOfTop) {
    EXPECT_EQ(closed("measure top -> 1/3"), closed("1/3"));
}

TEST(Surface, Measure) {
    Dist d = closed("measure 0.2 -> 1@3 | 0.3 -> 2@3 | 0.5 -> 3@3");
    EXPECT_EQ(d.weight(Value::injection(2, 3, Value())), Rational(3, 10));
}

TEST(Surface, Conditioning) {
    EXPECT_EQ(top_weight("0.01 | \\x. if x then 0.8 else 0.096"), Rational(25, 322));
}

TEST(Surface, PartialFunctions) {
    Dist d = closed("do y <- assert[\\x. x](1/2); return y^");
    EXPECT_EQ(d.weight(Value::inl(Value::bot())), Rational(1, 2));
    EXPECT_EQ(d.weight(Value::bot()), Rational(1, 2));
}

TEST(Surface, Enums) {
    Program p = load_program(
        "type Weather = sunny | rainy | cloudy\n"
        "def w : Weather = measure 0.5 -> sunny | 0.25 -> rainy | 0.25 -> cloudy\n"
        "def wet : 2 = case w of sunny -> 0 | rainy -> 1 | cloudy -> 0.5");
    EXPECT_EQ(eval({}, p.find("wet")->body, {}).weight(Value::top()), Rational(3, 8));
}

TEST(Surface, LocalFunctionsExpandByCopying) {
    // g(1/2) becomes 1/2 (x) 1/2^: two independent draws, not one shared one
    Program p = load_program("def f : 2 (x) 2 = let g(a) = a (x) a^ in g(1/2)");
    Dist d = eval({}, p.find("f")->body, {});
    for (const auto& v : enumerate_values(Type::tensor(two, two))) EXPECT_EQ(d.weight(v), Rational(1, 4));
}

TEST(Surface, OrthoBindsTightest) {
    Dist d = closed("do y <- assert[\\x. top](1/3); return y^");
    EXPECT_EQ(d.weight(Value::inl(Value::bot())), Rational(1, 3));
    EXPECT_EQ(closed("inl[1] 1^"), closed("inl[1] 0"));
}

TEST(Surface, PrintsFail) {
    std::string s = print(compile_expression("(fail : 2 + 1)"));
    EXPECT_NE(s.find("inr"), std::string::npos) << s;
    EXPECT_EQ(eval({}, compile_expression(s), {}), closed("(fail : 2 + 1)"));
}

TEST(Surface, PrintRoundTrip) {
    Program p = load_program("def subject : 2 = 0.01\ndef positive_result(x : 2) : 2 = if x then 0.8 else 0.096\n"
                             "def posterior : 2 = subject | positive_result");
    for (const auto& d : p.defs) {
        Term again = compile_expression(print(d.body), d.params, &p);
        EXPECT_EQ(eval_all(d.params, again), eval_all(d.params, d.body)) << print(d.body);
    }
}

TEST(Surface, ExtremeLiteralsRoundTrip) {
    for (const char* src : {"1", "0", "1 (+) 0"}) {
        std::string s = print(compile_expression(src));
        EXPECT_EQ(eval({}, compile_expression(s), {}), closed(src)) << s;
    }
}

TEST(Surface, LiteralsArePreserved) {
    std::string s = print(compile_expression("1/3 (+) 1/3"));
    EXPECT_NE(s.find("1/3"), std::string::npos);
    EXPECT_EQ(s.find("2/3"), std::string::npos);
}

TEST(Surface, Diagnostics) {
    EXPECT_EQ(type_error("def bad(x : 2) : 2 (x) 2 = x (x) x"), TypeErrorKind::LinearityViolation);
    EXPECT_EQ(type_error("def bad(x : 2) : 2 (x) 2 = let z = x in z (x) z"), TypeErrorKind::LinearityViolation);
    EXPECT_EQ(type_error("def bad : 2 = 1/2 (+) 0.7"), TypeErrorKind::SideConditionFailed);
    EXPECT_EQ(type_error("def bad : 2 = y"), TypeErrorKind::UnboundVar);
    EXPECT_EQ(type_error("def bad : 2 (x) 2 = 1/2"), TypeErrorKind::Mismatch);
    EXPECT_NE(error_of<ElaborationError>("def bad : 2 = measure 0.5 -> top | 0.6 -> bot"), "accepted");
    EXPECT_NE(error_of<ElaborationError>("def s : 2 = 1\ndef s : 2 = 0"), "accepted");
    EXPECT_NE(error_of<ElaborationError>("query eval nothing"), "accepted");
}

TEST(Surface, ParsedTypes) {
    EXPECT_EQ(parse_type("2 (x) 2 + 1"), Type::sum(Type::tensor(two, two), Type::one()));
    EXPECT_EQ(parse_type("3 * 2"), Type::copower(3, two));
    EXPECT_EQ(parse_type("3"), Type::n(3));
}
