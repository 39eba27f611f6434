#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/tables.hpp"

namespace lehmer {

inline constexpr i64 kDefaultThueRadius = 512;
inline constexpr i64 kDefaultQuarticRadius = 1000;
inline constexpr i64 kDefaultW2Radius = 1000;

// Homogeneous F_{2m}(X, Y) = sum_i coeffs[i] X^i Y^(m-i).
struct FPolynomial {
    int index;
    std::vector<BigInt> coeffs;

    [[nodiscard]] int degree() const { return index / 2; }

    [[nodiscard]] BigInt operator()(const BigInt& X, const BigInt& Y) const {
        const int m = degree();
        BigInt total = 0, xp = 1;
        std::vector<BigInt> ypow(static_cast<std::size_t>(m + 1), BigInt(1));
        for (int j = 1; j <= m; ++j) ypow[static_cast<std::size_t>(j)] = ypow[static_cast<std::size_t>(j - 1)] * Y;
        for (int i = 0; i <= m; ++i) {
            total += coeffs[static_cast<std::size_t>(i)] * xp * ypow[static_cast<std::size_t>(m - i)];
            xp *= X;
        }
        return total;
    }

    [[nodiscard]] std::string to_string() const {
        const int m = degree();
        std::string out;
        for (int i = 0; i <= m; ++i) {
            const BigInt& c = coeffs[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            BigInt mag = abs(c);
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string mono;
            if (i > 0) mono += i == 1 ? "X" : "X^" + std::to_string(i);
            if (m - i > 0) mono += (m - i) == 1 ? "Y" : "Y^" + std::to_string(m - i);
            if (mag != 1 || mono.empty()) out += mag.str();
            out += mono;
        }
        return out;
    }
};

// G_0 = 1, G_1 = s, G_t = s G_{t-1} - X G_{t-2} with s^2 = Y; G_t[i] is the coefficient of X^i s^(t-2i).
inline FPolynomial f_poly(int two_m) {
    if (two_m % 2 != 0) throw std::invalid_argument("f_poly: index must be even");
    if (two_m < 2 || two_m > 64) throw std::invalid_argument("f_poly: index must lie in [2, 64]");
    std::vector<BigInt> g0{BigInt(1)}, g1{BigInt(1)};
    for (int t = 2; t <= two_m; ++t) {
        std::vector<BigInt> g(static_cast<std::size_t>(t / 2 + 1), BigInt(0));
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i < g1.size()) g[i] += g1[i];
            if (i >= 1 && i - 1 < g0.size()) g[i] -= g0[i - 1];
        }
        g0 = std::move(g1);
        g1 = std::move(g);
    }
    return {two_m, g1};
}

// F_{2m}(X, Y) via F_0 = 1, F_2 = Y - X, F_{2j} = (Y - 2X) F_{2j-2} - X^2 F_{2j-4}.
template <class T>
T f_value(int m, const T& X, const T& Y) {
    if (m == 0) return T(1);
    T prev(1), cur = Y - X;
    const T c = Y - X - X, x2 = X * X;
    for (int j = 2; j <= m; ++j) {
        T next = c * cur - x2 * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline u64 f_value_mod(int m, i64 X, i64 Y, u64 P) {
    const u64 x = static_cast<u64>(mod(X, static_cast<i64>(P))), y = static_cast<u64>(mod(Y, static_cast<i64>(P)));
    if (m == 0) return 1 % P;
    const u64 c = (y + 2 * (P - x)) % P, x2 = mulmod(x, x, P);
    u64 prev = 1, cur = (y + P - x) % P;
    for (int j = 2; j <= m; ++j) {
        u64 next = (mulmod(c, cur, P) + P - mulmod(x2, prev, P)) % P;
        prev = cur;
        cur = next;
    }
    return cur;
}

enum class Completeness { proven, proven_within_radius, table_certified, conditional_grh };

inline const char* to_string(Completeness c) {
    switch (c) {
        case Completeness::proven: return "proven";
        case Completeness::proven_within_radius: return "proven-within-radius";
        case Completeness::table_certified: return "table-certified";
        case Completeness::conditional_grh: return "conditional-GRH";
    }
    return "?";
}

inline Completeness completeness_from_string(const std::string& s) {
    for (auto c : {Completeness::proven, Completeness::proven_within_radius, Completeness::table_certified,
                   Completeness::conditional_grh})
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown completeness '" + s + "'");
}

enum class EquationKind { F, C2, C4, W2Q };

inline const char* to_string(EquationKind k) {
    switch (k) {
        case EquationKind::F: return "f";
        case EquationKind::C2: return "c2";
        case EquationKind::C4: return "c4";
        case EquationKind::W2Q: return "w2q";
    }
    return "?";
}

inline EquationKind equation_from_string(const std::string& s) {
    for (auto k : {EquationKind::F, EquationKind::C2, EquationKind::C4, EquationKind::W2Q})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown equation '" + s + "'");
}

struct ThueProblem {
    EquationKind kind;
    int index = 0;  // 2m for F
    int sign = 0;   // +1 / -1 for C2 and C4
    i64 D = 0;      // right-hand side (D or ell)
    i64 radius = 0;

    [[nodiscard]] std::string describe() const {
        switch (kind) {
            case EquationKind::F: return "F_" + std::to_string(index) + "(X,Y) = " + std::to_string(D);
            case EquationKind::C2:
                return sign < 0 ? "x^2 + y^2 = " + std::to_string(D) : "y^2 - x^2 = " + std::to_string(D);
            case EquationKind::C4:
                return sign < 0 ? "y^4 - 3x^2y^2 + x^4 = " + std::to_string(D)
                                : "y^4 + 3x^2y^2 + x^4 = " + std::to_string(D);
            case EquationKind::W2Q: return "y^4 - 3xy^2 + x^2 = " + std::to_string(D);
        }
        return "?";
    }

    bool operator==(const ThueProblem&) const = default;
};

struct SolutionSet {
    ThueProblem problem;
    std::vector<IntPair> solutions;  // sorted lexicographically, unique
    Completeness completeness = Completeness::proven_within_radius;
    int table_id = 0;  // embedded table consulted for completeness, 0 if none
};

inline BigInt equation_value(const ThueProblem& pr, i64 x, i64 y) {
    const BigInt X = x, Y = y;
    switch (pr.kind) {
        case EquationKind::F: return f_value<BigInt>(pr.index / 2, X, Y);
        case EquationKind::C2: return pr.sign < 0 ? BigInt(X * X + Y * Y) : BigInt(Y * Y - X * X);
        case EquationKind::C4: {
            const BigInt x2 = X * X, y2 = Y * Y;
            return y2 * y2 + (pr.sign < 0 ? -3 : 3) * x2 * y2 + x2 * x2;
        }
        case EquationKind::W2Q: {
            const BigInt y2 = Y * Y;
            return y2 * y2 - 3 * X * y2 + X * X;
        }
    }
    return 0;
}

inline bool satisfies(const ThueProblem& pr, const IntPair& s) { return equation_value(pr, s.first, s.second) == pr.D; }

namespace detail {

inline void normalize(std::vector<IntPair>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void add_sign_orbit(std::vector<IntPair>& out, i64 x, i64 y) {
    for (int sx : {1, -1})
        for (int sy : {1, -1}) out.emplace_back(sx * x, sy * y);
}

inline void mark_against_table(SolutionSet& s, int table_id, const std::vector<i64>& key, Completeness level) {
    const auto* row = find_row(embedded_solution_table(table_id), key);
    if (row && row->solutions == s.solutions) {
        s.completeness = level;
        s.table_id = table_id;
    }
}

}  // namespace detail

inline SolutionSet solve_f(int two_m, i64 D, i64 radius = kDefaultThueRadius) {
    if (two_m % 2 != 0 || two_m < 2 || two_m > 200) throw std::invalid_argument("solve_f: index must be even in [2, 200]");
    if (D == 0) throw std::invalid_argument("solve_f: D must be nonzero");
    if (radius < 0) throw std::invalid_argument("solve_f: negative radius");
    const int m = two_m / 2;
    SolutionSet out{{EquationKind::F, two_m, 0, D, radius}, {}, Completeness::proven_within_radius, 0};

    // F_{2m}(1, t) has the real roots t_j = 4cos^2(j pi / (2m+1)), j = 1..m.
    std::vector<double> roots;
    for (int j = 1; j <= m; ++j) {
        const double c = std::cos(j * std::numbers::pi / (2.0 * m + 1.0));
        roots.push_back(4.0 * c * c);
    }
    constexpr u64 P1 = 2305843009213693951ULL;  // 2^61 - 1
    constexpr u64 P2 = 4611686018427387847ULL;
    const u64 d1 = static_cast<u64>(mod(D, static_cast<i64>(P1)));
    const u64 d2 = static_cast<u64>(mod(D, static_cast<i64>(P2)));
    auto check = [&](i64 X, i64 Y) {
        if (f_value_mod(m, X, Y, P1) != d1 || f_value_mod(m, X, Y, P2) != d2) return;
        if (f_value<BigInt>(m, BigInt(X), BigInt(Y)) == D) out.solutions.emplace_back(X, Y);
    };

    const double absD = std::fabs(static_cast<double>(D));
    std::vector<i64> cand;
    for (i64 X = -radius; X <= radius; ++X) {
        cand.clear();
        if (X == 0) {
            for (i64 Y = -radius; Y <= radius; ++Y) cand.push_back(Y);
        } else {
            const double ax = std::fabs(static_cast<double>(X));
            for (int j = 0; j < m; ++j) {
                double denom = 1.0;
                for (int i = 0; i < m; ++i)
                    if (i != j) denom *= std::fabs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) * ax / 2.0;
                double delta = absD / denom;
                if (!std::isfinite(delta) || delta > 2.0 * static_cast<double>(radius) + 2.0)
                    delta = 2.0 * static_cast<double>(radius) + 2.0;
                delta = delta * 1.001 + 2.0;
                const double centre = roots[static_cast<std::size_t>(j)] * static_cast<double>(X);
                const i64 lo = std::max<i64>(-radius, static_cast<i64>(std::floor(centre - delta)));
                const i64 hi = std::min<i64>(radius, static_cast<i64>(std::ceil(centre + delta)));
                for (i64 Y = lo; Y <= hi; ++Y) cand.push_back(Y);
            }
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        }
        for (i64 Y : cand) check(X, Y);
    }
    detail::normalize(out.solutions);
    const std::vector<i64> key{two_m + 1, D};
    detail::mark_against_table(out, 3, key, Completeness::table_certified);
    if (out.table_id == 0) detail::mark_against_table(out, 4, key, Completeness::conditional_grh);
    return out;
}

inline SolutionSet square_filter(const SolutionSet& in, int k, int chi_sign) {
    if (chi_sign != 1 && chi_sign != -1) throw std::invalid_argument("square_filter: chi_sign must be +-1");
    SolutionSet out = in;
    out.solutions.clear();
    for (auto [X, Y] : in.solutions) {
        if (!exact_sqrt(Y)) continue;
        const i64 v = chi_sign * X;
        if (v < 2) continue;
        auto f = factorize(v);
        if (f.factors.size() == 1 && f.factors[0].second == k - 1) out.solutions.emplace_back(X, Y);
    }
    return out;
}

inline SolutionSet solve_c2(int sign, i64 ell) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("solve_c2: sign must be +-1");
    if (ell == 0) throw std::invalid_argument("solve_c2: ell must be nonzero");
    SolutionSet out{{EquationKind::C2, 0, sign, ell, 0}, {}, Completeness::proven, 0};
    if (sign < 0) {
        if (ell > 0)
            for (i64 x = 0; x * x <= ell; ++x)
                if (auto y = exact_sqrt(ell - x * x)) detail::add_sign_orbit(out.solutions, x, *y);
    } else {
        // (y - x)(y + x) = ell
        const i64 mag = ell < 0 ? -ell : ell;
        for (i64 f = 1; f * f <= mag; ++f) {
            if (mag % f) continue;
            for (i64 f1 : {f, mag / f, -f, -(mag / f)}) {
                const i64 f2 = ell / f1;
                if ((f1 + f2) % 2 != 0) continue;
                out.solutions.emplace_back((f2 - f1) / 2, (f1 + f2) / 2);
            }
        }
    }
    detail::normalize(out.solutions);
    return out;
}

inline SolutionSet solve_c4(int sign, i64 ell, i64 radius = kDefaultQuarticRadius) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("solve_c4: sign must be +-1");
    if (radius < 0 || radius > 100000) throw std::invalid_argument("solve_c4: radius out of range");
    SolutionSet out{{EquationKind::C4, 0, sign, ell, radius}, {}, Completeness::proven_within_radius, 0};
    const i128 target = ell;
    for (i64 x = 0; x <= radius; ++x) {
        const i128 x2 = static_cast<i128>(x) * x, x4 = x2 * x2;
        if (sign > 0 && x4 > target) break;
        for (i64 y = 0; y <= radius; ++y) {
            const i128 y2 = static_cast<i128>(y) * y;
            const i128 v = y2 * y2 + (sign < 0 ? -3 : 3) * x2 * y2 + x4;
            if (sign > 0 && v > target) break;
            if (v == target) detail::add_sign_orbit(out.solutions, x, y);
        }
    }
    detail::normalize(out.solutions);
    const std::vector<i64> key{ell};
    if (sign < 0) {
        detail::mark_against_table(out, ell > 0 ? 5 : 6, key, Completeness::table_certified);
    } else {
        detail::mark_against_table(out, 7, key, Completeness::table_certified);
    }
    return out;
}

inline SolutionSet solve_w2_quartic(i64 ell, i64 y_radius = kDefaultW2Radius) {
    if (ell == 0) throw std::invalid_argument("solve_w2_quartic: ell must be nonzero");
    if (y_radius < 0 || y_radius > 100000) throw std::invalid_argument("solve_w2_quartic: radius out of range");
    SolutionSet out{{EquationKind::W2Q, 0, 0, ell, y_radius}, {}, Completeness::proven_within_radius, 0};
    for (i64 y = -y_radius; y <= y_radius; ++y) {
        const i128 y2 = static_cast<i128>(y) * y;
        const i128 disc = 5 * y2 * y2 + 4 * static_cast<i128>(ell);
        if (disc < 0) continue;
        auto s = exact_sqrt(checked::narrow(disc));
        if (!s) continue;
        for (i64 sg : {1, -1}) {
            const i128 num = 3 * y2 + sg * static_cast<i128>(*s);
            if (num % 2 != 0) continue;
            out.solutions.emplace_back(checked::narrow(num / 2), y);
        }
    }
    detail::normalize(out.solutions);
    detail::mark_against_table(out, 8, {ell}, Completeness::table_certified);
    return out;
}

inline SolutionSet solve(const ThueProblem& pr) {
    switch (pr.kind) {
        case EquationKind::F: return solve_f(pr.index, pr.D, pr.radius);
        case EquationKind::C2: return solve_c2(pr.sign, pr.D);
        case EquationKind::C4: return solve_c4(pr.sign, pr.D, pr.radius);
        case EquationKind::W2Q: return solve_w2_quartic(pr.D, pr.radius);
    }
    throw std::invalid_argument("unknown equation");
}

}  // namespace lehmer
