#include <gtest/gtest.h>

#include <future>
#include <set>

#include "lehmer/certifier.hpp"

using namespace lehmer;

namespace {

const std::vector<Rational>& singular_lambdas() {
    static const std::vector<Rational> v{Rational(1),     Rational(8),      Rational(1, 8),  Rational(-4),
                                         Rational(-1, 4), Rational(-64),    Rational(-1, 64)};
    return v;
}

bool coprime_to(i64 n, const std::vector<i64>& bad) {
    for (i64 p : bad)
        if (n % p == 0) return false;
    return true;
}

// Odd values |v| <= 101 taken by a(n), n <= N, n > 1 coprime to the bad primes.
std::set<i64> attained_values(const std::vector<i64>& a, const std::vector<i64>& bad, i64 skip_multiple = 0) {
    std::set<i64> out;
    for (i64 n = 2; n < static_cast<i64>(a.size()); ++n) {
        if (!coprime_to(n, bad) || (skip_multiple && n % skip_multiple == 0)) continue;
        const i64 v = a[static_cast<std::size_t>(n)];
        if (v % 2 != 0 && v <= kValueEnvelope && v >= -kValueEnvelope) out.insert(v);
    }
    return out;
}

// a(n) for a weight 2 curve with trivial character, from point counts and the prime-power recurrence.
std::vector<i64> curve_coefficients(const CurveQ& e, i64 N) {
    std::vector<i64> a(static_cast<std::size_t>(N + 1), 0);
    a[1] = 1;
    const auto bad = e.bad_primes();
    for (i64 n = 2; n <= N; ++n) {
        if (!coprime_to(n, bad)) continue;
        i64 out = 1;
        for (auto [p, k] : factorize(n).factors) out *= prime_power_coeff(a_E(e, p), 1, 2, p, k);
        a[static_cast<std::size_t>(n)] = out;
    }
    return a;
}

}  // namespace

TEST(Certifier, CandidateExponents) {
    EXPECT_EQ(candidate_exponents(5), (std::vector<int>{2, 3, 4, 5}));
    EXPECT_EQ(candidate_exponents(7), (std::vector<int>{2, 3, 4, 7}));
    EXPECT_EQ(candidate_exponents(97), (std::vector<int>{2, 3, 4, 7, 97}));
    EXPECT_EQ(candidate_exponents(-97), candidate_exponents(97));
    EXPECT_THROW(candidate_exponents(9), std::invalid_argument);
}

TEST(Certifier, ParityFilter) {
    EXPECT_EQ(parity_filter({2, 3, 4, 5}), (std::vector<int>{3, 5}));
    EXPECT_EQ(parity_filter({2, 3, 4, 7}), (std::vector<int>{3, 7}));
    EXPECT_EQ(parity_filter({2, 3, 4, 7, 97}), (std::vector<int>{3, 7, 97}));
}

TEST(Certifier, CongruenceFilter) {
    EXPECT_EQ(congruence_filter(3, 5, {3, 5}), (std::vector<CongruenceClass>{{5, {1}}}));
    for (const auto& c : congruence_filter(5, -11, {3, 5, 11})) EXPECT_NE(c.d, 3);
    // Direct residue enumeration of 1 + r + ... + r^(d-1) mod 3.
    for (const auto& c : congruence_filter(3, 7, parity_filter(candidate_exponents(7))))
        for (i64 r : c.residues) {
            i64 s = 0, pw = 1;
            for (int i = 0; i < c.d; ++i, pw = pw * r) s += pw;
            EXPECT_EQ(s % 3, 1);
        }
}

TEST(Certifier, Units) {
    EXPECT_EQ(certify_value(1, Constraint::all_lambda()).verdict.kind, VerdictKind::excluded);
    EXPECT_EQ(certify_value(-1, Constraint::weight2(3)).verdict.kind, VerdictKind::excluded);
    EXPECT_EQ(certify_value(-1, Constraint::weight2(5)).verdict.kind, VerdictKind::excluded);
    for (const auto& s : certify_value(1, Constraint::all_lambda()).steps) EXPECT_EQ(s.anchor, "unit-lemma");
}

TEST(Certifier, PrimeExamples) {
    EXPECT_EQ(certify_value(5, Constraint::all_lambda()).verdict.kind, VerdictKind::excluded);
    EXPECT_EQ(certify_value(5, Constraint::weight2(3)).verdict.kind, VerdictKind::excluded);
    EXPECT_EQ(certify_value(-7, Constraint::weight2(3)).verdict.kind, VerdictKind::excluded);
    const auto w = certify_value(-5, Constraint::for_lambda(Rational(1)));
    EXPECT_EQ(w.verdict.kind, VerdictKind::witness);
    EXPECT_EQ(w.verdict.n, 9);
    const auto w69 = certify_value(-69, Constraint::for_lambda(Rational(8)));
    EXPECT_EQ(w69.verdict.kind, VerdictKind::witness);
    EXPECT_EQ(w69.verdict.n, 169);
}

TEST(Certifier, TwentyFiveIsAttainedForLambdaOne) {
    const auto s = eta_product_series(parse_eta_product("eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4"), 25);
    ASSERT_EQ(s.at(25), 25);
    const auto c = certify_value(25, Constraint::for_lambda(Rational(1)));
    EXPECT_EQ(c.verdict.kind, VerdictKind::witness);
    EXPECT_EQ(c.verdict.n, 25);
}

TEST(Certifier, OpenLocusIsInconclusive) {
    const auto c = certify_value(97, Constraint::all_lambda(false));
    EXPECT_EQ(c.verdict.kind, VerdictKind::inconclusive);
    const auto g = certify_value(97, Constraint::all_lambda(true));
    EXPECT_EQ(g.verdict.kind, VerdictKind::excluded_under_grh);
    EXPECT_TRUE(g.grh_used);
}

TEST(Certifier, InputValidation) {
    EXPECT_THROW(certify_value(4, Constraint::all_lambda()), std::invalid_argument);
    EXPECT_THROW(certify_value(103, Constraint::all_lambda()), std::invalid_argument);
    EXPECT_THROW(Constraint::weight2(7), std::invalid_argument);
    EXPECT_THROW(Constraint::for_lambda(Rational(-1)), std::invalid_argument);
    EXPECT_THROW(certify_prime_value(15, Constraint::all_lambda()), std::invalid_argument);
}

TEST(Certifier, WitnessSearch) {
    EXPECT_EQ(witness_search(-5, Rational(1), 200), (std::vector<i64>{9}));
    EXPECT_EQ(witness_search(99, Rational(8), 300), (std::vector<i64>{225}));
    EXPECT_TRUE(witness_search(2, Rational(8), 300).empty());
}

TEST(Certifier, SignedPartitions) {
    const auto parts = signed_partitions(-45);
    std::set<std::vector<i64>> got(parts.begin(), parts.end());
    std::set<std::vector<i64>> want{{-45}, {-15, 3}, {-5, 9}, {-9, 5}, {-3, 15}, {-5, 3, 3}, {-5, -3, -3}, {-3, 3, 5}};
    EXPECT_EQ(got, want);
    for (const auto& p : parts) {
        i64 prod = 1;
        for (i64 f : p) prod *= f;
        EXPECT_EQ(prod, -45);
    }
}

TEST(Certifier, CertificateRoundTrip) {
    for (i64 v : {-5, 25, 45, 5}) {
        const auto c = certify_value(v, Constraint::for_lambda(Rational(1)));
        const auto j = to_json(c);
        const auto back = certificate_from_json(Json::parse(j.dump()));
        EXPECT_EQ(to_json(back), j);
        EXPECT_TRUE(verify_certificate(back).ok) << v;
    }
    const auto c = certify_value(-13, Constraint::weight2(5));
    EXPECT_TRUE(verify_certificate(certificate_from_json(to_json(c))).ok);
}

TEST(Certifier, TamperingIsDetected) {
    const auto c = certify_value(5, Constraint::all_lambda());
    ASSERT_TRUE(c.is_excluded());
    auto bad_verdict = c;
    bad_verdict.verdict.kind = VerdictKind::excluded_under_grh;
    EXPECT_FALSE(verify_certificate(bad_verdict).ok);
    auto bad_step = c;
    bool changed = false;
    for (auto& s : bad_step.steps)
        if (s.anchor == "equation") {
            s.data["solve"]["solutions"].push_back({1, 1});
            changed = true;
            break;
        }
    ASSERT_TRUE(changed);
    EXPECT_FALSE(verify_certificate(bad_step).ok);
    auto bad_version = c;
    bad_version.tool_version = "0.0.1";
    EXPECT_FALSE(verify_certificate(bad_version).ok);
    auto dropped = c;
    dropped.steps.pop_back();
    EXPECT_FALSE(verify_certificate(dropped).ok);
}

TEST(Certifier, GrhNeverWeakensAVerdict) {
    for (i64 v = -101; v <= 101; v += 2) {
        if (v == 1 || v == -1 || !is_prime(v < 0 ? -v : v)) continue;
        const auto plain = certify_value(v, Constraint::all_lambda(false));
        const auto grh = certify_value(v, Constraint::all_lambda(true));
        if (plain.is_excluded()) {
            EXPECT_EQ(grh.verdict.kind, plain.verdict.kind) << v;
        }
        if (plain.verdict.kind == VerdictKind::witness) {
            EXPECT_EQ(grh.verdict.kind, VerdictKind::witness) << v;
        }
        EXPECT_FALSE(plain.grh_used) << v;
    }
}

TEST(Certifier, SurvivorsSolveTheirLucasEquation) {
    for (const auto& c : {Constraint::all_lambda(true), Constraint::weight2(3), Constraint::weight2(5),
                          Constraint::for_lambda(Rational(8))}) {
        for (i64 v : {-5, 9, 11, 25, 49, -45, 75, 99, -11, 3, -3}) {
            const auto la = analyze_locus(v, c);
            for (const auto& s : la.survivors) {
                const BigInt B = BigInt(s.chi) * (c.weight() == 2 ? BigInt(s.p) : BigInt(s.p) * s.p);
                EXPECT_EQ(lucas_term<BigInt>(BigInt(s.a), B, s.d), v) << c.key() << " " << v;
                EXPECT_TRUE(is_prime(s.p));
                EXPECT_TRUE(within_deligne(s.a, c.weight(), s.p));
            }
        }
    }
}

TEST(Certifier, NoAttainedValueIsExcludedForSingularForms) {
    for (const auto& lambda : singular_lambdas()) {
        const auto* f = find_singular_form(lambda);
        ASSERT_NE(f, nullptr);
        const auto s = eta_product_series(f->product, kDefaultCoefficientBound);
        for (i64 v : attained_values(s.a, f->bad_primes())) {
            const auto c = certify_value(v, Constraint::for_lambda(lambda, true));
            EXPECT_EQ(c.verdict.kind, VerdictKind::witness) << to_string(lambda) << " " << v;
            EXPECT_FALSE(certify_value(v, Constraint::all_lambda(true)).is_excluded()) << to_string(lambda) << " " << v;
        }
    }
}

TEST(Certifier, NoAttainedValueIsExcludedForTorsionCurves) {
    const std::vector<std::pair<CurveQ, int>> curves = {{{0, 0, 1, {2, 3}}, 3}, {{1, -720, 5184, {2, 5}}, 5}};
    for (const auto& [e, t] : curves) {
        const auto a = curve_coefficients(e, kDefaultCoefficientBound);
        for (i64 v : attained_values(a, e.bad_primes(), t))
            EXPECT_FALSE(certify_value(v, Constraint::weight2(t, true)).is_excluded()) << t << " " << v;
    }
}

TEST(Certifier, ParallelAnalysisMatchesSequential) {
    const std::vector<i64> values{-97, -71, -45, -13, 7, 21, 53, 81, 93, 99};
    const auto c = Constraint::for_lambda(Rational(-4), true);
    std::vector<std::future<LocusAnalysis>> fs;
    for (i64 v : values) fs.push_back(std::async(std::launch::async, [v, &c] { return analyze_locus(v, c); }));
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto par = fs[i].get();
        const auto seq = analyze_locus_uncached(values[i], c);
        EXPECT_EQ(par.steps, seq.steps) << values[i];
        EXPECT_EQ(par.survivors, seq.survivors);
        EXPECT_EQ(par.open, seq.open);
    }
}
