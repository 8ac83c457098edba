#include "comet/scalar.hpp"

#include <gtest/gtest.h>

using namespace comet;

namespace {
Scalar s(const char* text) { return Scalar::parse(text); }
}

TEST(Scalar, ParsesDecimalsFractionsAndIntegers) {
    EXPECT_EQ(s("0.096"), Scalar(96, 1000));
    EXPECT_EQ(s("0.01"), Scalar(1, 100));
    EXPECT_EQ(s("3/6"), Scalar(1, 2));
    EXPECT_EQ(s("1"), Scalar::one());
    EXPECT_EQ(s("0"), Scalar::zero());
    EXPECT_THROW(s("3/2"), ScalarRangeError);
    EXPECT_THROW(s("1.5"), ScalarRangeError);
}

TEST(Scalar, PrintingRoundTrips) {
    for (const char* text : {"0", "1", "1/3", "297/3125", "0.0506975517"})
        EXPECT_EQ(Scalar::parse(s(text).to_string()), s(text)) << text;
}

TEST(Scalar, PartialSumOfTheDiseaseBranches) {
    EXPECT_EQ(ovee_scalar(ovee_scalar(s("0.008"), s("0.09504")), s("0.89696")), Scalar::one());
    EXPECT_EQ(ovee_scalar(s("2/7"), Scalar::zero()), s("2/7"));
    EXPECT_THROW(ovee_scalar(s("3/4"), s("1/2")), DisjointnessViolation);
}

TEST(Scalar, SequentialProduct) {
    EXPECT_EQ(andthen_scalar(s("0.01"), s("0.8")), s("0.008"));
    EXPECT_EQ(andthen_scalar(andthen_scalar(s("0.999"), s("0.998")), s("0.05085")), Scalar(Rational(506975517, 10000000000UL)));
    EXPECT_EQ(andthen_scalar(s("5/9"), Scalar::one()), s("5/9"));
}

TEST(Scalar, Orthosupplement) {
    EXPECT_EQ(ortho(s("0.01")), s("0.99"));
    EXPECT_EQ(ortho(Scalar::one()), Scalar::zero());
    EXPECT_EQ(ortho(ortho(s("4/11"))), s("4/11"));
}

TEST(Scalar, Order) {
    EXPECT_TRUE(leq_scalar(Scalar::one_over(10), s("0.10304")));
    EXPECT_TRUE(leq_scalar(s("2/3"), s("2/3")));
    EXPECT_FALSE(leq_scalar(s("1/2"), s("1/3")));
}

TEST(Scalar, DecimalRendering) {
    EXPECT_EQ(to_decimal(Rational(25, 322)), "0.07763975155");
    EXPECT_EQ(to_decimal(Rational(297, 322)), "0.9223602484");
    EXPECT_EQ(to_decimal(Rational(1, 100)), "0.01");
    EXPECT_EQ(to_decimal(Rational(1)), "1");
    EXPECT_EQ(to_decimal(Rational(0)), "0");
    EXPECT_EQ(to_fixed(Rational(25, 322), 4), "0.0776");
    EXPECT_EQ(to_fixed(Rational(521389757, 10000000000UL), 9), "0.052138976");
    // ties go to the even neighbour
    EXPECT_EQ(to_fixed(Rational(1, 8), 2), "0.12");
    EXPECT_EQ(to_fixed(Rational(3, 8), 2), "0.38");
}
