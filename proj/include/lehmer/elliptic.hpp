#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/newform.hpp"

namespace lehmer {

inline constexpr i64 kPointCountLimit = 100000;

// y^2 = x^3 + a2 x^2 + a4 x + a6
struct CurveQ {
    i64 a2 = 0;
    i64 a4 = 0;
    i64 a6 = 0;
    std::vector<int> torsion;  // declared torsion divisors, subset of {2, 3, 5}

    [[nodiscard]] BigInt cubic_discriminant() const {
        const BigInt a = a2, b = a4, c = a6;
        return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    }

    [[nodiscard]] std::vector<i64> bad_primes() const {
        std::set<i64> s{2};
        BigInt d = abs(cubic_discriminant());
        for (i64 p = 3; d > 1 && p < 1000000; p += 2) {
            if (d % p == 0) {
                s.insert(p);
                while (d % p == 0) d /= p;
            }
        }
        if (d > 1) {
            if (d > std::numeric_limits<i64>::max()) throw OverflowError("curve discriminant cofactor too large");
            for (i64 p : prime_divisors(static_cast<i64>(d))) s.insert(p);
        }
        return {s.begin(), s.end()};
    }

    [[nodiscard]] bool declares_torsion(int ell) const {
        return std::find(torsion.begin(), torsion.end(), ell) != torsion.end();
    }

    void validate() const {
        if (cubic_discriminant() == 0) throw std::invalid_argument("singular cubic: discriminant is zero");
        for (int t : torsion)
            if (t != 2 && t != 3 && t != 5) throw std::invalid_argument("torsion divisors must lie in {2, 3, 5}");
    }

    bool operator==(const CurveQ&) const = default;
};

inline std::string to_string(const CurveQ& c) {
    return "y^2 = x^3 + (" + std::to_string(c.a2) + ")x^2 + (" + std::to_string(c.a4) + ")x + (" +
           std::to_string(c.a6) + ")";
}

struct LambdaCurve {
    Rational lambda;
    Rational c;  // 1/(lambda+1)
    i64 e = 1;   // model scaling, d = e^2
    CurveQ model;
    std::vector<i64> bad_primes;
};

inline void require_lambda(const Rational& lambda) {
    if (lambda == Rational(0) || lambda == Rational(-1)) throw std::invalid_argument("lambda must avoid 0 and -1");
}

inline std::vector<i64> bad_primes(const Rational& lambda) {
    require_lambda(lambda);
    std::set<i64> s{2};
    const Rational l1 = lambda + 1;
    for (i64 v : {lambda.numerator(), lambda.denominator(), l1.numerator(), l1.denominator()})
        if (v != 1 && v != -1)
            for (i64 p : prime_divisors(v)) s.insert(p);
    return {s.begin(), s.end()};
}

inline LambdaCurve integral_model(const Rational& lambda) {
    require_lambda(lambda);
    LambdaCurve out;
    out.lambda = lambda;
    out.c = Rational(1) / (lambda + 1);
    const i64 t = out.c.denominator();
    // least e with t | e^4
    i64 e = 1;
    if (t > 1)
        for (auto [p, k] : factorize(t).factors) e = checked::mul(e, checked::pow(p, static_cast<unsigned>((k + 3) / 4)));
    out.e = e;
    const i64 d = checked::mul(e, e);
    const i64 s = out.c.numerator();
    const i64 d2 = checked::mul(d, d), d3 = checked::mul(d2, d);
    out.model.a2 = -d;
    out.model.a4 = checked::mul(-s, d2 / t);
    out.model.a6 = checked::mul(s, d3 / t);
    out.model.torsion = {2};
    out.model.validate();
    out.bad_primes = bad_primes(lambda);
    return out;
}

inline i64 count_points(const CurveQ& curve, i64 p) {
    require_odd_prime(p, "count_points");
    if (p >= kPointCountLimit) throw std::invalid_argument("count_points: p exceeds the enumeration cap");
    if (curve.cubic_discriminant() % p == 0)
        throw BadPrimeError("count_points: bad reduction at p = " + std::to_string(p));
    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (i64 y = 1; y < p; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
    const i64 a2 = mod(curve.a2, p), a4 = mod(curve.a4, p), a6 = mod(curve.a6, p);
    i64 sum = 0;
    for (i64 x = 0; x < p; ++x) {
        i64 v = ((x + a2) % p * x % p + a4) % p;
        v = (v * x + a6) % p;
        sum += chi[static_cast<std::size_t>(v)];
    }
    return p + 1 + sum;
}

inline i64 a_E(const CurveQ& curve, i64 p) { return p + 1 - count_points(curve, p); }

inline int gamma(const Rational& lambda, i64 p) {
    require_lambda(lambda);
    const Rational l1 = lambda + 1;
    const i64 r = rational_mod_p(l1, p);
    if (r == 0) throw BadPrimeError("gamma: p = " + std::to_string(p) + " divides the numerator of lambda+1");
    return legendre(r, p);
}

inline i64 a_lambda(const LambdaCurve& curve, i64 p) {
    require_odd_prime(p, "a_lambda");
    if (std::binary_search(curve.bad_primes.begin(), curve.bad_primes.end(), p))
        throw BadPrimeError("a_lambda: p = " + std::to_string(p) + " is bad for lambda = " + to_string(curve.lambda));
    const i64 b = a_E(curve.model, p);
    return gamma(curve.lambda, p) * (b * b - 2 * p);
}

inline i64 a_lambda(const Rational& lambda, i64 p) { return a_lambda(integral_model(lambda), p); }

struct TorsionCheck {
    i64 a_pd;
    i64 lhs;  // a(p^d) mod ell
    i64 rhs;  // 1 + p + ... + p^d mod ell
    [[nodiscard]] bool holds() const { return lhs == rhs; }
};

inline TorsionCheck torsion_congruence(const CurveQ& curve, int ell, i64 p, int d) {
    if (!curve.declares_torsion(ell)) throw std::invalid_argument("torsion_congruence: torsion not declared");
    if (p == ell) throw std::invalid_argument("torsion_congruence: p must differ from ell");
    if (d < 1) throw std::invalid_argument("torsion_congruence: d must be positive");
    const i64 ap = a_E(curve, p);
    const i64 apd = prime_power_coeff(ap, 1, 2, p, d);
    i64 rhs = 0, pw = 1;
    for (int i = 0; i <= d; ++i) {
        rhs = (rhs + pw) % ell;
        pw = pw * (p % ell) % ell;
    }
    return {apd, mod(apd, ell), rhs};
}

}  // namespace lehmer
