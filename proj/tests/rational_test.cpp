#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tileasm/rational.hpp"

using tileasm::Rational;

namespace {

TEST(Rational, NormalizesToLowestTermsWithPositiveDenominator) {
    const Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational(0, 5).den(), 1);
    EXPECT_TRUE(Rational(10, 5).is_integer());
}

TEST(Rational, ZeroDenominatorThrows) { EXPECT_THROW(Rational(1, 0), std::domain_error); }

TEST(Rational, Arithmetic) {
    const Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_THROW(a / Rational(0), std::domain_error);
    Rational c = a;
    c += b;
    c *= Rational(4);
    EXPECT_EQ(c, Rational(2));
}

TEST(Rational, OrderingIsExact) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_LT(Rational(-1, 2), Rational(-1, 3));
    EXPECT_GT(Rational(1'000'000'001, 1'000'000'000), Rational(1));
    // Cross products exceed 64 bits but compare correctly.
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
    EXPECT_LT(Rational(big - 1, big), Rational(big, big + 1));
}

TEST(Rational, FloorAndCeil) {
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(7, 2).ceil(), 4);
    EXPECT_EQ(Rational(-7, 2).floor(), -4);
    EXPECT_EQ(Rational(-7, 2).ceil(), -3);
    EXPECT_EQ(Rational(4).floor(), 4);
    EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(Rational, OverflowThrowsInsteadOfWrapping) {
    const Rational big(std::numeric_limits<std::int64_t>::max());
    EXPECT_THROW(big + Rational(1), std::overflow_error);
    EXPECT_THROW(big * Rational(2), std::overflow_error);
    EXPECT_THROW(Rational(1, std::numeric_limits<std::int64_t>::max()) * Rational(1, 3), std::overflow_error);
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("18/5"), Rational(18, 5));
    EXPECT_EQ(Rational::parse("-3"), Rational(-3));
    EXPECT_EQ(Rational::parse("+2/4"), Rational(1, 2));
    EXPECT_EQ(Rational(18, 5).str(), "18/5");
    EXPECT_EQ(Rational(-4).str(), "-4");
    for (const char* bad : {"", "1/", "/2", "1/0", "x", "1.5", "1/2/3", "--1"})
        EXPECT_THROW(Rational::parse(bad), tileasm::InvalidInput) << bad;
    std::ostringstream s;
    s << Rational(-1, 10);
    EXPECT_EQ(s.str(), "-1/10");
}

TEST(Rational, FieldLawsOnRandomValues) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 2000; ++i) {
        const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Rational(0));
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
        EXPECT_EQ(Rational::parse(a.str()), a);
        if (a.to_double() + 1e-9 < b.to_double()) {
            EXPECT_LT(a, b);
        }
    }
}

}  // namespace
