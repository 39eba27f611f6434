#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

inline constexpr i64 kDefaultSeriesLength = 2048;
inline constexpr i64 kMaxSeriesLength = 200000;

struct HeckeSpec {
    int weight = 2;
    std::optional<i64> character_disc;  // unset until inferred
    std::vector<i64> bad_primes;        // sorted

    [[nodiscard]] bool is_bad(i64 p) const { return std::binary_search(bad_primes.begin(), bad_primes.end(), p); }
};

struct EtaFactor {
    i64 multiplier;
    int exponent;
    bool operator==(const EtaFactor&) const = default;
};

struct EtaProduct {
    std::vector<EtaFactor> factors;
    i64 twist_disc = 1;

    [[nodiscard]] i64 shift_numerator() const {
        i64 s = 0;
        for (const auto& f : factors) s = checked::add(s, checked::mul(f.multiplier, f.exponent));
        return s;
    }

    [[nodiscard]] int weight() const {
        int r = 0;
        for (const auto& f : factors) r += f.exponent;
        return r / 2;
    }

    void validate() const {
        if (factors.empty()) throw std::invalid_argument("eta product has no factors");
        int r = 0;
        for (const auto& f : factors) {
            if (f.multiplier < 1 || f.exponent < 1)
                throw std::invalid_argument("eta factor needs positive multiplier and exponent");
            r += f.exponent;
        }
        if (shift_numerator() % 24 != 0) throw std::invalid_argument("eta product: sum of m_i*r_i must be divisible by 24");
        if (r % 2 != 0) throw std::invalid_argument("eta product: total exponent must be even");
        if (twist_disc == 0) throw std::invalid_argument("eta product: twist discriminant must be nonzero");
    }

    // Primes of the multipliers and of the twist discriminant.
    [[nodiscard]] std::vector<i64> level_primes() const {
        std::set<i64> s;
        for (const auto& f : factors)
            if (f.multiplier > 1)
                for (i64 p : prime_divisors(f.multiplier)) s.insert(p);
        if (twist_disc != 1 && twist_disc != -1)
            for (i64 p : prime_divisors(twist_disc)) s.insert(p);
        return {s.begin(), s.end()};
    }

    bool operator==(const EtaProduct&) const = default;
};

inline std::string to_string(const EtaProduct& e) {
    std::ostringstream os;
    for (std::size_t i = 0; i < e.factors.size(); ++i) {
        if (i) os << '*';
        os << "eta(" << e.factors[i].multiplier << ')';
        if (e.factors[i].exponent != 1) os << '^' << e.factors[i].exponent;
    }
    if (e.twist_disc != 1) os << " % " << e.twist_disc;
    return os.str();
}

// Grammar: factor ('*' factor)* ['%' disc], factor = "eta(" m ")" ['^' r].
inline EtaProduct parse_eta_product(const std::string& text) {
    EtaProduct out;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad eta product '" + text + "': " + why);
    };
    auto number = [&]() -> i64 {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("expected a number at offset " + std::to_string(start));
        try {
            return std::stoll(s.substr(start, pos - start));
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
        return 0;
    };
    for (;;) {
        if (s.compare(pos, 4, "eta(") != 0) fail("expected 'eta(' at offset " + std::to_string(pos));
        pos += 4;
        i64 m = number();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
        i64 r = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            r = number();
        }
        if (r < 1 || r > 1000) fail("exponent out of range");
        out.factors.push_back({m, static_cast<int>(r)});
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            continue;
        }
        break;
    }
    if (pos < s.size() && s[pos] == '%') {
        ++pos;
        out.twist_disc = number();
    }
    if (pos != s.size()) fail("trailing characters");
    out.validate();
    return out;
}

struct CoefficientSeries {
    HeckeSpec spec;
    std::vector<i64> a;  // a[0] unused

    [[nodiscard]] i64 length() const { return static_cast<i64>(a.size()) - 1; }
    [[nodiscard]] i64 at(i64 n) const {
        if (n < 1 || n > length()) throw std::out_of_range("coefficient index " + std::to_string(n) + " outside series");
        return a[static_cast<std::size_t>(n)];
    }
};

// Terms (exponent, sign) of prod_{n>=1} (1 - q^{m n}) up to q^N.
inline std::vector<std::pair<i64, int>> pentagonal_terms(i64 m, i64 N) {
    std::vector<std::pair<i64, int>> out{{0, 1}};
    for (i64 k = 1;; ++k) {
        const int sign = (k % 2 == 0) ? 1 : -1;
        const i64 e1 = k * (3 * k - 1) / 2 * m, e2 = k * (3 * k + 1) / 2 * m;
        if (e1 > N) break;
        out.emplace_back(e1, sign);
        if (e2 <= N) out.emplace_back(e2, sign);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

template <class T>
void multiply_sparse(std::vector<T>& dense, const std::vector<std::pair<i64, int>>& sparse);

template <>
inline void multiply_sparse<i64>(std::vector<i64>& dense, const std::vector<std::pair<i64, int>>& sparse) {
    const auto N = static_cast<i64>(dense.size()) - 1;
    std::vector<i64> out(dense.size(), 0);
    for (auto [e, sgn] : sparse)
        for (i64 i = 0; i + e <= N; ++i) {
            i64 term = sgn > 0 ? dense[static_cast<std::size_t>(i)] : checked::sub(0, dense[static_cast<std::size_t>(i)]);
            out[static_cast<std::size_t>(i + e)] = checked::add(out[static_cast<std::size_t>(i + e)], term);
        }
    dense.swap(out);
}

template <>
inline void multiply_sparse<BigInt>(std::vector<BigInt>& dense, const std::vector<std::pair<i64, int>>& sparse) {
    const auto N = static_cast<i64>(dense.size()) - 1;
    std::vector<BigInt> out(dense.size(), BigInt(0));
    for (auto [e, sgn] : sparse)
        for (i64 i = 0; i + e <= N; ++i) {
            if (sgn > 0)
                out[static_cast<std::size_t>(i + e)] += dense[static_cast<std::size_t>(i)];
            else
                out[static_cast<std::size_t>(i + e)] -= dense[static_cast<std::size_t>(i)];
        }
    dense.swap(out);
}

template <class T>
std::vector<T> expand_untwisted(const EtaProduct& prod, i64 N, i64 shift) {
    std::vector<T> acc(static_cast<std::size_t>(std::max<i64>(N - shift, 0) + 1), T(0));
    acc[0] = T(1);
    const i64 budget = static_cast<i64>(acc.size()) - 1;
    for (const auto& f : prod.factors) {
        auto pent = pentagonal_terms(f.multiplier, budget);
        for (int r = 0; r < f.exponent; ++r) multiply_sparse(acc, pent);
    }
    return acc;
}

}  // namespace detail

inline CoefficientSeries twist_series(const CoefficientSeries& s, i64 disc, i64 N);

inline CoefficientSeries eta_product_series(const EtaProduct& prod, i64 N = kDefaultSeriesLength) {
    prod.validate();
    if (N < 1) throw std::invalid_argument("eta_product_series: N must be positive");
    if (N > kMaxSeriesLength) throw std::invalid_argument("eta_product_series: N exceeds the term budget");
    const i64 shift = prod.shift_numerator() / 24;
    CoefficientSeries out;
    out.spec.weight = prod.weight();
    {
        EtaProduct untwisted = prod;
        untwisted.twist_disc = 1;
        out.spec.bad_primes = untwisted.level_primes();
    }
    out.a.assign(static_cast<std::size_t>(N + 1), 0);
    try {
        auto acc = detail::expand_untwisted<i64>(prod, N, shift);
        for (std::size_t i = 0; i < acc.size() && i + static_cast<std::size_t>(shift) <= static_cast<std::size_t>(N); ++i)
            out.a[i + static_cast<std::size_t>(shift)] = acc[i];
    } catch (const OverflowError&) {
        auto acc = detail::expand_untwisted<BigInt>(prod, N, shift);
        for (std::size_t i = 0; i < acc.size() && i + static_cast<std::size_t>(shift) <= static_cast<std::size_t>(N); ++i)
            out.a[i + static_cast<std::size_t>(shift)] = checked::narrow(acc[i]);
    }
    if (prod.twist_disc != 1) return twist_series(out, prod.twist_disc, N);
    return out;
}

inline CoefficientSeries twist_series(const CoefficientSeries& s, i64 disc, i64 N) {
    if (disc == 0) throw std::invalid_argument("twist_series: zero discriminant");
    if (N > s.length()) throw std::out_of_range("twist_series: series shorter than requested length");
    CoefficientSeries out;
    out.spec = s.spec;
    out.spec.character_disc.reset();
    if (disc != 1 && disc != -1) {
        std::set<i64> bad(out.spec.bad_primes.begin(), out.spec.bad_primes.end());
        for (i64 p : prime_divisors(disc)) bad.insert(p);
        out.spec.bad_primes.assign(bad.begin(), bad.end());
    }
    out.a.assign(static_cast<std::size_t>(N + 1), 0);
    for (i64 n = 1; n <= N; ++n) out.a[static_cast<std::size_t>(n)] = kronecker(disc, n) * s.a[static_cast<std::size_t>(n)];
    return out;
}

using CharacterValues = std::map<i64, std::optional<int>>;  // prime -> epsilon, nullopt = bad

class CorruptSeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline CharacterValues infer_character(const CoefficientSeries& s, int k, i64 p_max) {
    CharacterValues out;
    for (i64 p : primes_up_to(p_max)) {
        if (checked::mul(p, p) > s.length())
            throw std::out_of_range("infer_character: series lacks a(" + std::to_string(p) + "^2)");
        const i128 ap = s.at(p), ap2 = s.at(p * p);
        const i128 pk = checked::pow(p, static_cast<unsigned>(k - 1));
        bool plus = ap2 == ap * ap - pk;
        bool minus = ap2 == ap * ap + pk;
        if (plus && minus) throw CorruptSeriesError("both character values fit at p = " + std::to_string(p));
        out[p] = plus ? std::optional<int>(1) : (minus ? std::optional<int>(-1) : std::nullopt);
    }
    return out;
}

// Smallest-magnitude discriminant whose Kronecker symbol agrees with every good-prime value.
inline std::optional<i64> identify_discriminant(const CharacterValues& chi, i64 max_abs = 400) {
    for (i64 mag = 1; mag <= max_abs; ++mag)
        for (i64 d : {mag, -mag}) {
            if (mag == 1 && d == -1) continue;
            i64 r = mod(d, 4);
            if (r != 0 && r != 1) continue;
            bool ok = true;
            for (const auto& [p, v] : chi) {
                if (!v) continue;
                if (kronecker(d, p) != *v) {
                    ok = false;
                    break;
                }
            }
            if (ok) return d;
        }
    return std::nullopt;
}

inline bool within_deligne(i64 a_p, int k, i64 p) {
    const BigInt lhs = BigInt(a_p) * a_p;
    BigInt rhs = 4;
    for (int i = 0; i < k - 1; ++i) rhs *= p;
    return lhs <= rhs;
}

class DeligneViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline BigInt prime_power_coeff_big(i64 a_p, int chi_p, int k, i64 p, int m) {
    if (m < 0) throw std::invalid_argument("prime_power_coeff: negative exponent");
    if (!within_deligne(a_p, k, p))
        throw DeligneViolation("|a(p)| exceeds 2p^((k-1)/2) for p = " + std::to_string(p));
    BigInt pk = 1;
    for (int i = 0; i < k - 1; ++i) pk *= p;
    const BigInt B = pk * chi_p;
    BigInt prev = 0, cur = 1;
    for (int i = 0; i < m; ++i) {
        BigInt next = BigInt(a_p) * cur - B * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline i64 prime_power_coeff(i64 a_p, int chi_p, int k, i64 p, int m) {
    return checked::narrow(prime_power_coeff_big(a_p, chi_p, k, p, m));
}

struct DaggerViolation {
    std::string kind;  // normalization, multiplicativity, recurrence, deligne, character
    i64 n;
    i64 left = 0;
    i64 right = 0;
    i64 expected = 0;
    i64 actual = 0;
};

inline std::vector<DaggerViolation> verify_dagger(const CoefficientSeries& s, int k, i64 N,
                                                  const CharacterValues* supplied = nullptr) {
    if (N > s.length()) throw std::out_of_range("verify_dagger: series shorter than requested bound");
    std::vector<DaggerViolation> out;
    if (N < 1) return out;
    if (s.at(1) != 1) out.push_back({"normalization", 1, 0, 0, 1, s.at(1)});

    std::vector<i64> spf(static_cast<std::size_t>(N + 1), 0);
    for (i64 i = 2; i <= N; ++i)
        if (!spf[static_cast<std::size_t>(i)])
            for (i64 j = i; j <= N; j += i)
                if (!spf[static_cast<std::size_t>(j)]) spf[static_cast<std::size_t>(j)] = i;

    for (i64 n = 2; n <= N; ++n) {
        i64 p = spf[static_cast<std::size_t>(n)], q = 1, rest = n;
        while (rest % p == 0) {
            rest /= p;
            q *= p;
        }
        if (rest == 1) continue;
        const i128 prod = static_cast<i128>(s.at(q)) * s.at(rest);
        if (prod != s.at(n)) out.push_back({"multiplicativity", n, q, rest, checked::narrow(prod), s.at(n)});
    }

    CharacterValues inferred;
    const CharacterValues* chi = supplied;
    if (!chi) {
        inferred = infer_character(s, k, isqrt(N));
        chi = &inferred;
    }
    for (i64 p : primes_up_to(N)) {
        if (s.spec.is_bad(p)) continue;
        if (!within_deligne(s.at(p), k, p)) out.push_back({"deligne", p, 0, 0, 0, s.at(p)});
        if (checked::mul(p, p) > N) continue;
        auto it = chi->find(p);
        if (it == chi->end() || !it->second) {
            out.push_back({"character", p, 0, 0, 0, s.at(p * p)});
            continue;
        }
        const BigInt pk = BigInt(checked::pow(p, static_cast<unsigned>(k - 1))) * *it->second;
        i64 prev = 1, pm = p;
        i64 cur = s.at(p);
        for (int m = 2; checked::mul(pm, p) <= N; ++m) {
            pm *= p;
            const BigInt want = BigInt(s.at(p)) * cur - pk * prev;
            if (want != BigInt(s.at(pm))) out.push_back({"recurrence", pm, p, m, checked::narrow(want), s.at(pm)});
            prev = cur;
            cur = s.at(pm);
        }
    }
    return out;
}

struct SingularForm {
    Rational lambda;
    EtaProduct product;

    // Primes excluded from the coprimality condition: the level support and 2.
    [[nodiscard]] std::vector<i64> bad_primes() const {
        std::set<i64> s{2};
        for (i64 p : product.level_primes()) s.insert(p);
        return {s.begin(), s.end()};
    }
};

inline const std::vector<SingularForm>& singular_forms() {
    static const std::vector<SingularForm> forms = {
        {Rational(1), parse_eta_product("eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4")},
        {Rational(8), parse_eta_product("eta(4)^6")},
        {Rational(1, 8), parse_eta_product("eta(4)^6 % 8")},
        {Rational(-4), parse_eta_product("eta(2)^3*eta(6)^3")},
        {Rational(-1, 4), parse_eta_product("eta(2)^3*eta(6)^3 % -4")},
        {Rational(-64), parse_eta_product("eta(1)^3*eta(7)^3")},
        {Rational(-1, 64), parse_eta_product("eta(1)^3*eta(7)^3 % -4")},
    };
    return forms;
}

inline const SingularForm* find_singular_form(const Rational& lambda) {
    for (const auto& f : singular_forms())
        if (f.lambda == lambda) return &f;
    return nullptr;
}

}  // namespace lehmer
