#include <gtest/gtest.h>

#include "lehmer/newform.hpp"

using namespace lehmer;

namespace {

// Direct product of (1 - q^{m k}) factors, shifted by sum(m r)/24, then twisted.
std::vector<i64> naive_eta(const std::vector<std::pair<i64, int>>& factors, i64 twist, i64 N) {
    i64 shift = 0;
    for (auto [m, r] : factors) shift += m * r;
    shift /= 24;
    std::vector<i64> acc(static_cast<std::size_t>(N + 1), 0);
    acc[0] = 1;
    for (auto [m, r] : factors)
        for (int e = 0; e < r; ++e)
            for (i64 k = 1; m * k <= N; ++k)
                for (i64 i = N; i >= m * k; --i) acc[static_cast<std::size_t>(i)] -= acc[static_cast<std::size_t>(i - m * k)];
    std::vector<i64> out(static_cast<std::size_t>(N + 1), 0);
    for (i64 n = shift; n <= N; ++n) out[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n - shift)];
    if (twist != 1)
        for (i64 n = 1; n <= N; ++n) out[static_cast<std::size_t>(n)] *= kronecker(twist, n);
    return out;
}

}  // namespace

TEST(Newform, ParseAndPrint) {
    auto e = parse_eta_product("eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4");
    EXPECT_EQ(e.factors.size(), 4u);
    EXPECT_EQ(e.twist_disc, -4);
    EXPECT_EQ(e.weight(), 3);
    EXPECT_EQ(to_string(e), "eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4");
    EXPECT_EQ(parse_eta_product(to_string(e)), e);
    EXPECT_THROW(parse_eta_product("eta(4)^5"), std::invalid_argument);
    EXPECT_THROW(parse_eta_product("eta(4"), std::invalid_argument);
    EXPECT_THROW(parse_eta_product("eta(4)^6 junk"), std::invalid_argument);
    EXPECT_THROW(parse_eta_product("eta(0)^6"), std::invalid_argument);
}

TEST(Newform, SeriesMatchesDirectProduct) {
    const std::vector<std::pair<std::string, std::pair<std::vector<std::pair<i64, int>>, i64>>> cases = {
        {"eta(4)^6", {{{4, 6}}, 1}},
        {"eta(4)^6 % 8", {{{4, 6}}, 8}},
        {"eta(2)^3*eta(6)^3", {{{2, 3}, {6, 3}}, 1}},
        {"eta(1)^3*eta(7)^3 % -4", {{{1, 3}, {7, 3}}, -4}},
        {"eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4", {{{1, 2}, {2, 1}, {4, 1}, {8, 2}}, -4}},
    };
    for (const auto& [text, spec] : cases) {
        const i64 N = 400;
        auto s = eta_product_series(parse_eta_product(text), N);
        auto naive = naive_eta(spec.first, spec.second, N);
        for (i64 n = 1; n <= N; ++n) EXPECT_EQ(s.at(n), naive[static_cast<std::size_t>(n)]) << text << " n=" << n;
    }
}

TEST(Newform, EtaFourSixExample) {
    auto s = eta_product_series(parse_eta_product("eta(4)^6"), 25);
    EXPECT_EQ(s.at(1), 1);
    EXPECT_EQ(s.at(5), -6);
    EXPECT_EQ(s.at(9), 9);
    EXPECT_EQ(s.at(13), 10);
    EXPECT_EQ(s.at(25), 11);
    for (i64 n = 1; n <= 25; ++n)
        if (n % 4 != 1) EXPECT_EQ(s.at(n), 0) << n;
}

TEST(Newform, OtherProductExamples) {
    EXPECT_EQ(eta_product_series(parse_eta_product("eta(2)^3*eta(6)^3"), 49).at(49), -45);
    EXPECT_EQ(eta_product_series(parse_eta_product("eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4"), 9).at(9), -5);
}

TEST(Newform, TwistByTrivialCharacterIsIdentity) {
    auto s = eta_product_series(parse_eta_product("eta(2)^3*eta(6)^3"), 300);
    auto t = twist_series(s, 1, 300);
    EXPECT_EQ(t.a, s.a);
}

TEST(Newform, CharacterInference) {
    auto s = eta_product_series(parse_eta_product("eta(4)^6"), 200);
    auto chi = infer_character(s, 3, 13);
    EXPECT_EQ(chi.at(3), -1);
    EXPECT_EQ(chi.at(5), 1);
    EXPECT_EQ(chi.at(13), 1);
    auto big = eta_product_series(parse_eta_product("eta(4)^6"), 97 * 97);
    auto full = infer_character(big, 3, 97);
    for (auto [p, v] : full) {
        if (p == 2) continue;
        ASSERT_TRUE(v.has_value()) << p;
        EXPECT_EQ(*v, kronecker(-4, p)) << p;
    }
    EXPECT_EQ(identify_discriminant(full), -4);
    auto w = eta_product_series(parse_eta_product("eta(2)^3*eta(6)^3"), 30);
    EXPECT_EQ(infer_character(w, 3, 5).at(5), -1);
}

TEST(Newform, PrimePowerCoefficients) {
    EXPECT_EQ(prime_power_coeff(-6, 1, 3, 5, 2), 11);
    EXPECT_EQ(prime_power_coeff(-6, 1, 3, 5, 3), 84);
    EXPECT_EQ(prime_power_coeff(4, -1, 2, 7, 0), 1);
    EXPECT_THROW(prime_power_coeff(11, 1, 3, 5, 2), DeligneViolation);
}

TEST(Newform, DaggerHoldsForSeries) {
    for (const char* text : {"eta(4)^6", "eta(1)^3*eta(7)^3"}) {
        auto s = eta_product_series(parse_eta_product(text), 10000);
        EXPECT_TRUE(verify_dagger(s, 3, 10000).empty()) << text;
    }
}

TEST(Newform, DaggerReportsInjectedFault) {
    auto s = eta_product_series(parse_eta_product("eta(2)^3*eta(6)^3"), 500);
    s.spec.bad_primes = {2, 3};
    ASSERT_TRUE(verify_dagger(s, 3, 500).empty());
    s.a[15] = s.a[3] * s.a[5] + 1;
    auto v = verify_dagger(s, 3, 500);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].kind, "multiplicativity");
    EXPECT_EQ(v[0].n, 15);
    EXPECT_EQ(v[0].left, 3);
    EXPECT_EQ(v[0].right, 5);
}

TEST(Newform, DaggerReportsRecurrenceFault) {
    auto s = eta_product_series(parse_eta_product("eta(4)^6"), 500);
    s.a[125] += 2;
    auto v = verify_dagger(s, 3, 500);
    bool seen = false;
    for (const auto& x : v) seen = seen || (x.kind == "recurrence" && x.n == 125);
    EXPECT_TRUE(seen);
}

TEST(Newform, SingularFormsAreWeightThree) {
    EXPECT_EQ(singular_forms().size(), 7u);
    for (const auto& f : singular_forms()) EXPECT_EQ(f.product.weight(), 3);
    EXPECT_NE(find_singular_form(Rational(-1, 64)), nullptr);
    EXPECT_EQ(find_singular_form(Rational(2)), nullptr);
}
