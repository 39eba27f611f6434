#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace lehmer {

using BigInt = boost::multiprecision::cpp_int;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using Rational = boost::rational<i64>;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Raised when a prime divides a denominator or otherwise has bad reduction.
class BadPrimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace checked {

inline i64 add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
    return r;
}

inline i64 sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
    return r;
}

inline i64 mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
    return r;
}

inline i64 pow(i64 base, unsigned e) {
    i64 r = 1;
    while (e--) r = mul(r, base);
    return r;
}

inline i64 narrow(const BigInt& v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw OverflowError("value does not fit in int64");
    return static_cast<i64>(v);
}

inline i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw OverflowError("value does not fit in int64");
    return static_cast<i64>(v);
}

}  // namespace checked

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    static constexpr i64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (i64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = static_cast<u64>(n) - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for every n < 3.3e24.
    for (u64 a : small) {
        u64 x = powmod(a, d, static_cast<u64>(n));
        if (x == 1 || x == static_cast<u64>(n) - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, static_cast<u64>(n));
            if (x == static_cast<u64>(n) - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    auto r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::optional<i64> exact_sqrt(i64 n) {
    if (n < 0) return std::nullopt;
    i64 r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

inline std::optional<BigInt> exact_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

struct PrimeFactorization {
    int sign = 1;
    std::vector<std::pair<i64, int>> factors;

    [[nodiscard]] i64 value() const {
        i64 v = sign;
        for (auto [p, e] : factors) v = checked::mul(v, checked::pow(p, static_cast<unsigned>(e)));
        return v;
    }

    [[nodiscard]] std::vector<i64> primes() const {
        std::vector<i64> out;
        for (auto [p, e] : factors) out.push_back(p);
        return out;
    }

    [[nodiscard]] bool is_prime_power() const { return factors.size() == 1; }

    bool operator==(const PrimeFactorization&) const = default;
};

namespace detail {

inline u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(static_cast<i64>(n))) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

}  // namespace detail

inline PrimeFactorization factorize(i64 n) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    if (n == std::numeric_limits<i64>::min()) throw OverflowError("factorize: magnitude too large");
    PrimeFactorization f;
    f.sign = n < 0 ? -1 : 1;
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    auto take = [&](u64 p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) f.factors.emplace_back(static_cast<i64>(p), e);
    };
    take(2);
    take(3);
    for (u64 p = 5; p <= 1000000 && p * p <= m; p += 6) {
        take(p);
        take(p + 2);
    }
    if (m > 1) {
        std::vector<u64> rest;
        detail::split_large(m, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            f.factors.emplace_back(static_cast<i64>(rest[i]), static_cast<int>(j - i));
            i = j;
        }
    }
    return f;
}

inline std::vector<i64> prime_divisors(i64 n) { return factorize(n).primes(); }

inline std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

inline void require_odd_prime(i64 p, const char* what) {
    if (p <= 2 || !is_prime(p)) throw std::invalid_argument(std::string(what) + ": modulus must be an odd prime");
}

inline int legendre(i64 a, i64 p) {
    require_odd_prime(p, "legendre");
    u64 r = static_cast<u64>(mod(a, p));
    if (r == 0) return 0;
    return powmod(r, static_cast<u64>(p - 1) / 2, static_cast<u64>(p)) == 1 ? 1 : -1;
}

inline int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    a = mod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

inline int kronecker(i64 d, i64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int t = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) t = -t;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        i64 r = mod(d, 8);
        if (r == 3 || r == 5) t = -t;
    }
    if (n == 1) return t;
    return t * jacobi(d, n);
}

inline i64 inverse_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw BadPrimeError("inverse_mod: not invertible");
    return mod(x, m);
}

inline i64 rational_mod_p(i64 num, i64 den, i64 p) {
    require_odd_prime(p, "rational_mod_p");
    if (den == 0) throw std::invalid_argument("rational_mod_p: zero denominator");
    if (den % p == 0) throw BadPrimeError("rational_mod_p: p = " + std::to_string(p) + " divides the denominator");
    return static_cast<i64>(mulmod(static_cast<u64>(mod(num, p)), static_cast<u64>(inverse_mod(den, p)), static_cast<u64>(p)));
}

inline i64 rational_mod_p(const Rational& r, i64 p) { return rational_mod_p(r.numerator(), r.denominator(), p); }

inline Rational parse_rational(const std::string& text) {
    auto parse_int = [&](const std::string& s) -> i64 {
        std::size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a rational number: '" + text + "'");
        }
        if (used != s.size()) throw std::invalid_argument("not a rational number: '" + text + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    i64 den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace lehmer
