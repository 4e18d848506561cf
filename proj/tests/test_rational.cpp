#include "ctfpack/rational.hpp"

#include <gtest/gtest.h>

using namespace ctfpack;

TEST(Rational, Formatting)
{
    EXPECT_EQ(to_fraction(Rational(6)), "6/1");
    EXPECT_EQ(to_fraction(Rational(150) / 600), "1/4");
    EXPECT_EQ(to_fraction(Rational(-3, 9)), "-1/3");
    EXPECT_EQ(to_human(Rational(1, 4)), "1/4 (0.2500)");
}

TEST(Rational, Parsing)
{
    EXPECT_EQ(parse_rational("6/12"), Rational(1, 2));
    EXPECT_EQ(parse_rational("7"), 7);
    EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}
