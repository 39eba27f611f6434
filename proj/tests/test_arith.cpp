#include <gtest/gtest.h>

#include <random>

#include "lehmer/arith.hpp"

using namespace lehmer;

namespace {

bool naive_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int naive_legendre(i64 a, i64 p) {
    const i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

}  // namespace

TEST(Arith, PrimalityMatchesTrialDivision) {
    for (i64 n = -5; n < 5000; ++n) EXPECT_EQ(is_prime(n), naive_prime(n)) << n;
}

TEST(Arith, PrimalityLargeKnownValues) {
    EXPECT_TRUE(is_prime(2305843009213693951LL));  // 2^61 - 1
    EXPECT_TRUE(is_prime(1000000007));
    EXPECT_FALSE(is_prime(1000000007LL * 998244353LL));
    EXPECT_FALSE(is_prime(3215031751LL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Arith, FactorizationRoundTrips) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<i64> dist(2, 4000000000000LL);
    for (int i = 0; i < 300; ++i) {
        const i64 n = dist(rng);
        const auto f = factorize(n);
        EXPECT_EQ(f.value(), n);
        for (auto [p, e] : f.factors) {
            EXPECT_TRUE(is_prime(p));
            EXPECT_GE(e, 1);
        }
    }
    EXPECT_EQ(factorize(-120).sign, -1);
    EXPECT_EQ(prime_divisors(97 * 96 * 98), (std::vector<i64>{2, 3, 7, 97}));
}

TEST(Arith, FactorizationOfSemiprime) {
    const i64 n = 1000000007LL * 998244353LL;
    const auto f = factorize(n);
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first, 998244353LL);
    EXPECT_EQ(f.factors[1].first, 1000000007LL);
}

TEST(Arith, LegendreMatchesSquareEnumeration) {
    for (i64 p : primes_up_to(200)) {
        if (p == 2) continue;
        for (i64 a = -30; a < 60; ++a) EXPECT_EQ(legendre(a, p), naive_legendre(a, p)) << a << " " << p;
    }
}

TEST(Arith, LegendreIsMultiplicative) {
    std::mt19937_64 rng(7);
    for (i64 p : primes_up_to(1000)) {
        if (p == 2) continue;
        for (int t = 0; t < 20; ++t) {
            const i64 a = static_cast<i64>(rng() % 100000) - 50000, b = static_cast<i64>(rng() % 100000) - 50000;
            EXPECT_EQ(legendre(a, p) * legendre(b, p), legendre(a * b, p));
        }
    }
}

TEST(Arith, LegendreRejectsEvenOrCompositeModulus) {
    EXPECT_THROW(legendre(3, 2), std::invalid_argument);
    EXPECT_THROW(legendre(3, 15), std::invalid_argument);
}

TEST(Arith, KroneckerAgreesWithLegendreAtOddPrimes) {
    for (i64 p : primes_up_to(300)) {
        if (p == 2) continue;
        for (i64 d : {-4, 8, -8, 5, -3, 12, -7}) EXPECT_EQ(kronecker(d, p), naive_legendre(d, p)) << d << " " << p;
    }
    // (d/2) by the Kronecker extension: 0 for even d, +1 for d = +-1 mod 8, -1 for d = +-3 mod 8.
    EXPECT_EQ(kronecker(-4, 2), 0);
    EXPECT_EQ(kronecker(-7, 2), 1);
    EXPECT_EQ(kronecker(5, 2), -1);
    EXPECT_EQ(kronecker(-4, 9), 1);
}

TEST(Arith, RationalModP) {
    EXPECT_EQ(rational_mod_p(1, 8, 7), 1);  // 8 = 1 mod 7
    EXPECT_EQ(mod(rational_mod_p(1, 3, 5) * 3, 5), 1);
    EXPECT_EQ(rational_mod_p(-1, 4, 5), 1);  // -1/4 = -4 = 1 mod 5
    EXPECT_THROW(rational_mod_p(1, 5, 5), BadPrimeError);
    EXPECT_THROW(rational_mod_p(1, 0, 5), std::invalid_argument);
}

TEST(Arith, ParseAndPrintRationals) {
    EXPECT_EQ(parse_rational("1/8"), Rational(1, 8));
    EXPECT_EQ(parse_rational("-64"), Rational(-64));
    EXPECT_EQ(parse_rational("-2/-8"), Rational(1, 4));
    EXPECT_EQ(to_string(Rational(-1, 64)), "-1/64");
    EXPECT_EQ(to_string(Rational(8)), "8");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Arith, CheckedArithmeticNeverWraps) {
    const i64 big = std::numeric_limits<i64>::max();
    EXPECT_THROW(checked::add(big, 1), OverflowError);
    EXPECT_THROW(checked::mul(big / 2 + 1, 2), OverflowError);
    EXPECT_THROW(checked::pow(10, 19), OverflowError);
    EXPECT_EQ(checked::pow(3, 39), 4052555153018976267LL);
    EXPECT_THROW(checked::narrow(BigInt(big) + 1), OverflowError);
}

TEST(Arith, IntegerSquareRoots) {
    for (i64 n = 0; n < 20000; ++n) {
        const i64 r = isqrt(n);
        EXPECT_LE(r * r, n);
        EXPECT_GT((r + 1) * (r + 1), n);
        EXPECT_EQ(exact_sqrt(n).has_value(), r * r == n);
    }
    EXPECT_EQ(isqrt(std::numeric_limits<i64>::max()), 3037000499LL);
    EXPECT_FALSE(exact_sqrt(-4).has_value());
}

TEST(Arith, InverseMod) {
    for (i64 m : {7, 11, 97, 1000003})
        for (i64 a = 1; a < 50; ++a)
            if (a % m) EXPECT_EQ(mod(inverse_mod(a, m) * a, m), 1);
    EXPECT_THROW(inverse_mod(6, 9), BadPrimeError);
}
