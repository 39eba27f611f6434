#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/tables.hpp"

namespace lehmer {

class InvalidPairError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LucasPair {
    i64 A;
    i64 B;

    [[nodiscard]] i64 discriminant() const { return checked::sub(checked::mul(A, A), checked::mul(4, B)); }
    bool operator==(const LucasPair&) const = default;
};

inline LucasPair make_pair(i64 A, i64 B) {
    if (A == 0 || B == 0) throw InvalidPairError("Lucas pair needs A != 0 and B != 0");
    if (std::gcd(A, B) != 1) throw InvalidPairError("Lucas pair needs gcd(A, B) = 1");
    i64 a2 = checked::mul(A, A);
    for (i64 c = 1; c <= 4; ++c)
        if (a2 == checked::mul(c, B))
            throw InvalidPairError("degenerate Lucas pair: A^2 = " + std::to_string(c) + "B");
    return {A, B};
}

// u_n for arbitrary integer parameters; no validity requirement on (A, B).
template <class T>
T lucas_term(const T& A, const T& B, int n) {
    if (n < 0) throw std::invalid_argument("lucas_term: negative index");
    if (n == 0) return T(0);
    T prev(0), cur(1);
    for (int k = 1; k < n; ++k) {
        T next = A * cur - B * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline i64 lucas_term_checked(i64 A, i64 B, int n) {
    return checked::narrow(lucas_term<BigInt>(BigInt(A), BigInt(B), n));
}

struct LucasSequence {
    LucasPair pair;
    std::vector<BigInt> terms;  // terms[k] = u_{k+1}

    [[nodiscard]] const BigInt& u(int n) const {
        if (n < 1 || static_cast<std::size_t>(n) > terms.size()) throw std::out_of_range("Lucas index out of range");
        return terms[static_cast<std::size_t>(n - 1)];
    }
    [[nodiscard]] int size() const { return static_cast<int>(terms.size()); }
};

inline LucasSequence terms(const LucasPair& pair, int n) {
    if (n < 1) throw std::invalid_argument("terms: n must be at least 1");
    LucasSequence s{pair, {}};
    s.terms.reserve(static_cast<std::size_t>(n));
    BigInt prev = 0, cur = 1;
    const BigInt A = pair.A, B = pair.B;
    for (int k = 1; k <= n; ++k) {
        s.terms.push_back(cur);
        BigInt next = A * cur - B * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return s;
}

namespace detail {

inline BigInt strip_common(BigInt r, const BigInt& w) {
    if (w == 0) return BigInt(1);
    for (;;) {
        BigInt g = boost::multiprecision::gcd(r, w);
        if (g == 1) return r;
        r /= g;
    }
}

}  // namespace detail

// |u_n| with every prime of disc * u_1 * ... * u_{n-1} removed.
inline BigInt primitive_part(const LucasSequence& seq, int n) {
    BigInt r = abs(seq.u(n));
    r = detail::strip_common(r, BigInt(seq.pair.discriminant()));
    for (int k = 1; k < n && r > 1; ++k) r = detail::strip_common(r, seq.u(k));
    return r;
}

inline bool has_primitive_divisor(const LucasSequence& seq, int n) { return primitive_part(seq, n) > 1; }

inline std::vector<i64> primitive_divisors(const LucasPair& pair, int n) {
    if (n < 2) throw std::invalid_argument("primitive_divisors: n must exceed 1");
    auto seq = terms(pair, n);
    BigInt part = primitive_part(seq, n);
    if (part == 1) return {};
    return prime_divisors(checked::narrow(part));
}

inline std::optional<int> first_occurrence(const LucasPair& pair, i64 ell) {
    require_odd_prime(ell, "first_occurrence");
    if (pair.B % ell == 0) throw std::invalid_argument("first_occurrence: ell divides B");
    i64 a = mod(pair.A, ell), b = mod(pair.B, ell);
    i64 prev = 0, cur = 1;
    for (i64 n = 2; n <= ell + 1; ++n) {
        i64 next = mod(static_cast<i64>((static_cast<i128>(a) * cur - static_cast<i128>(b) * prev) % ell), ell);
        prev = cur;
        cur = next;
        if (cur == 0) return static_cast<int>(n);
    }
    return std::nullopt;
}

enum class DefectKind { none, sporadic, parametric, unlisted };

inline const char* to_string(DefectKind k) {
    switch (k) {
        case DefectKind::none: return "none";
        case DefectKind::sporadic: return "sporadic";
        case DefectKind::parametric: return "parametric";
        case DefectKind::unlisted: return "unlisted";
    }
    return "?";
}

struct ParametricMatch {
    int row;
    i64 m;
    int r = 0;
    int eps = 0;
    i64 p;
    int k;
    bool operator==(const ParametricMatch&) const = default;
};

struct DefectRecord {
    int index;
    BigInt value;
    DefectKind classification = DefectKind::none;
    int row = 0;
    std::optional<ParametricMatch> params;
};

namespace detail {

// Exponent r > 0 with |v| = base^r, or nullopt.
inline std::optional<int> exact_log(i64 v, i64 base) {
    if (v <= 1) return std::nullopt;
    int r = 0;
    while (v % base == 0) {
        v /= base;
        ++r;
    }
    if (v != 1 || r == 0) return std::nullopt;
    return r;
}

struct NormInfo {
    i64 p;
    int j;  // |B| = p^j
};

inline std::optional<NormInfo> prime_power_norm(i64 B) {
    i64 mag = B < 0 ? -B : B;
    if (mag < 2) return std::nullopt;
    auto f = factorize(mag);
    if (f.factors.size() != 1) return std::nullopt;
    return NormInfo{f.factors[0].first, f.factors[0].second};
}

inline std::optional<int> k_for_shape(NormShape shape, i64 B, int j) {
    switch (shape) {
        case NormShape::prime: return B > 0 && j == 1 ? std::optional<int>(2) : std::nullopt;
        case NormShape::prime_power: return B > 0 ? std::optional<int>(j + 1) : std::nullopt;
        case NormShape::odd_prime_power: return B > 0 && j % 2 == 1 ? std::optional<int>((j + 1) / 2) : std::nullopt;
        case NormShape::negative_odd_prime_power:
            return B < 0 && j % 2 == 1 ? std::optional<int>((j + 1) / 2) : std::nullopt;
    }
    return std::nullopt;
}

inline BigInt pow_big(i64 b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Parameters of a parametric row and the row's predicted u_n for A = +m.
inline std::optional<std::pair<ParametricMatch, BigInt>> solve_row(const ParametricRow& row, i64 m, i64 B) {
    auto norm = prime_power_norm(B);
    if (!norm) return std::nullopt;
    auto k = k_for_shape(row.shape, B, norm->j);
    if (!k) return std::nullopt;
    ParametricMatch pm{row.id, m, 0, 0, norm->p, *k};
    const BigInt M = m, M2 = M * M, b = B, P = B < 0 ? -b : b;
    auto eps_of = [](const BigInt& v) -> int { return v == 1 ? 1 : (v == -1 ? -1 : 0); };
    auto log_of = [](const BigInt& v, i64 base) -> std::optional<int> {
        if (v <= 1 || v > std::numeric_limits<i64>::max()) return std::nullopt;
        return exact_log(static_cast<i64>(v), base);
    };
    switch (row.id) {
        case 1:
            if (b != M2 + 1) return std::nullopt;
            return std::make_pair(pm, BigInt(-1));
        case 2: {
            if (m % 3 == 0) return std::nullopt;
            BigInt v = M2 - b;
            pm.eps = v > 0 ? 1 : -1;
            auto r = log_of(v > 0 ? v : BigInt(-v), 3);
            if (!r) return std::nullopt;
            pm.r = *r;
            return std::make_pair(pm, pm.eps * pow_big(3, pm.r));
        }
        case 3: {
            if (m % 3 == 0) return std::nullopt;
            auto r = log_of(P + M2, 3);
            if (!r) return std::nullopt;
            pm.r = *r;
            return std::make_pair(pm, pow_big(3, pm.r));
        }
        case 4:
            if (2 * b != M2 + 1) return std::nullopt;
            return std::make_pair(pm, BigInt(-M));
        case 5: {
            BigInt twice = M2 - 2 * b;
            if (twice % 2 != 0) return std::nullopt;
            pm.eps = eps_of(twice / 2);
            if (!pm.eps) return std::nullopt;
            return std::make_pair(pm, BigInt(2 * pm.eps * M));
        }
        case 6: {
            BigInt v = M2 - 3 * b;
            auto r = log_of(v > 0 ? v : BigInt(-v), 2);
            if (!r) return std::nullopt;
            BigInt w = pow_big(2, *r);
            if (*r % 2 == 1) w = -w;
            if (w != v) return std::nullopt;
            pm.r = *r;
            return std::make_pair(pm, w * M * (2 * M2 + w) / 3);
        }
        case 7: {
            auto r = log_of(3 * P + M2, 2);
            if (!r) return std::nullopt;
            pm.r = *r;
            BigInt w = pow_big(2, pm.r);
            if (pm.r % 2 == 1) w = -w;
            return std::make_pair(pm, w * M * (2 * M2 + w) / 3);
        }
        case 8: {
            BigInt v = M2 - 3 * b;
            if (v % 3 != 0) return std::nullopt;
            pm.eps = eps_of(v / 3);
            if (!pm.eps) return std::nullopt;
            return std::make_pair(pm, pm.eps * M * (2 * M2 + 3 * pm.eps));
        }
        case 9: {
            BigInt v = M2 - 3 * b;
            if (v % 3 != 0) return std::nullopt;
            v /= 3;
            pm.eps = v > 0 ? 1 : -1;
            auto r = log_of(v > 0 ? v : BigInt(-v), 2);
            if (!r) return std::nullopt;
            pm.r = *r;
            BigInt half = pow_big(2, pm.r - 1);
            return std::make_pair(pm, pow_big(2, pm.r + 1) * pm.eps * M * (M2 + 3 * pm.eps * half));
        }
        case 10: {
            BigInt v = 3 * P + M2;
            if (v % 3 != 0) return std::nullopt;
            auto r = log_of(v / 3, 2);
            if (!r) return std::nullopt;
            pm.r = *r;
            return std::make_pair(pm, pow_big(2, pm.r + 1) * M * (M2 + 3 * pow_big(2, pm.r - 1)));
        }
        default: return std::nullopt;
    }
}

inline BigInt sign_for_A(const BigInt& value_at_positive_A, i64 A, int n) {
    return (A < 0 && n % 2 == 0) ? BigInt(-value_at_positive_A) : value_at_positive_A;
}

}  // namespace detail

// Parametric rows whose constraints hold for (A, B) at index n and whose value form equals u_n.
inline std::optional<ParametricMatch> match_parametric(const LucasPair& pair, int n, const BigInt& un,
                                                       int max_row = 10) {
    i64 m = pair.A < 0 ? -pair.A : pair.A;
    for (const auto& row : embedded_table2()) {
        if (row.id > max_row || row.n != n) continue;
        auto hit = detail::solve_row(row, m, pair.B);
        if (!hit) continue;
        if (detail::sign_for_A(hit->second, pair.A, n) == un) return hit->first;
    }
    return std::nullopt;
}

inline std::optional<SporadicTerm> match_sporadic(const LucasPair& pair, int n) {
    for (const auto& row : embedded_table1()) {
        if (row.A != (pair.A < 0 ? -pair.A : pair.A) || row.B != pair.B) continue;
        for (const auto& t : row.terms)
            if (t.n == n) return SporadicTerm{n, checked::narrow(detail::sign_for_A(BigInt(t.value), pair.A, n))};
    }
    return std::nullopt;
}

class DefectTableViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline DefectRecord classify(const LucasSequence& seq, int n) {
    DefectRecord rec{n, seq.u(n), DefectKind::none, 0, std::nullopt};
    if (has_primitive_divisor(seq, n)) return rec;
    if (auto s = match_sporadic(seq.pair, n)) {
        if (BigInt(s->value) != rec.value)
            throw DefectTableViolation("sporadic table value disagrees with the recurrence at n = " + std::to_string(n));
        rec.classification = DefectKind::sporadic;
        rec.row = sporadic_lookup(seq.pair.A, seq.pair.B).id;
        return rec;
    }
    if (auto m = match_parametric(seq.pair, n, rec.value)) {
        rec.classification = DefectKind::parametric;
        rec.row = m->row;
        rec.params = m;
        return rec;
    }
    rec.classification = DefectKind::unlisted;
    return rec;
}

inline constexpr int kDefectBound = 30;

inline std::vector<DefectRecord> defect_scan(const LucasPair& pair, int n_max) {
    if (n_max > 64) throw std::invalid_argument("defect_scan: n_max must be at most 64");
    std::vector<DefectRecord> out;
    if (n_max < 3) return out;
    auto seq = terms(pair, n_max);
    for (int n = 3; n <= std::min(n_max, kDefectBound); ++n) out.push_back(classify(seq, n));
    for (int n = kDefectBound + 1; n <= n_max; ++n)
        if (!has_primitive_divisor(seq, n))
            throw DefectTableViolation("defective term beyond index 30 at n = " + std::to_string(n));
    return out;
}

inline std::vector<int> defective_indices(const std::vector<DefectRecord>& recs) {
    std::vector<int> out;
    for (const auto& r : recs)
        if (r.classification != DefectKind::none) out.push_back(r.index);
    return out;
}

struct OddDefect {
    DefectKind kind = DefectKind::none;
    int row = 0;  // sporadic or parametric row id
    std::optional<ParametricMatch> params;
};

// Odd defective values possible when A is even: two sporadic cases and parametric rows 1-3.
inline OddDefect odd_defect_filter(int weight, const LucasPair& pair, int n) {
    if (weight != 2 && weight != 3) throw std::invalid_argument("odd_defect_filter: weight must be 2 or 3");
    if (pair.A % 2 != 0) throw std::invalid_argument("odd_defect_filter: A must be even");
    if (n < 1) throw std::invalid_argument("odd_defect_filter: n must be positive");
    auto seq = terms(pair, std::max(n, 2));
    const BigInt& un = seq.u(n);
    if (n < 3 || un % 2 == 0 || has_primitive_divisor(seq, n)) return {};
    i64 m = pair.A < 0 ? -pair.A : pair.A;
    if (weight == 2 && m == 2 && ((n == 3 && pair.B == 3) || (n == 5 && pair.B == 11)))
        return {DefectKind::sporadic, sporadic_lookup(pair.A, pair.B).id, std::nullopt};
    if (auto pm = match_parametric(pair, n, un, 3)) return {DefectKind::parametric, pm->row, pm};
    return {};
}

}  // namespace lehmer
