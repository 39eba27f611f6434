#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace lehmer;

TEST(Properties, DivisibilitySequence) { EXPECT_EQ(props::divisibility(20, 24), std::vector<std::string>{}); }

TEST(Properties, FirstOccurrence) { EXPECT_EQ(props::first_occurrence_rule(20, 24), std::vector<std::string>{}); }

TEST(Properties, PrimitiveDivisorsBeyondThirty) {
    EXPECT_EQ(props::primitive_beyond_thirty(100, 31337), std::vector<std::string>{});
}

TEST(Properties, HasseBound) { EXPECT_EQ(props::hasse(props::sample_lambdas(), 1000), std::vector<std::string>{}); }

TEST(Properties, ParityOfPrimePowerCoefficients) {
    EXPECT_EQ(props::parity(props::sample_lambdas(), 100, 6), std::vector<std::string>{});
}

TEST(Properties, FPolynomialIsLucasTerm) {
    for (int m = 1; m <= 8; ++m)
        for (i64 X = -30; X <= 30; ++X)
            for (i64 a = -12; a <= 12; ++a)
                EXPECT_EQ(f_value<BigInt>(m, BigInt(X), BigInt(a * a)), lucas_term<BigInt>(BigInt(a), BigInt(X), 2 * m + 1));
}
