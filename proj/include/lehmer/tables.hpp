#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

using IntPair = std::pair<i64, i64>;

struct SporadicTerm {
    int n;
    i64 value;  // u_n for the positive-A member of the row
    bool operator==(const SporadicTerm&) const = default;
};

struct SporadicRow {
    int id;
    i64 A;  // magnitude; the row covers (+A, B) and (-A, B)
    i64 B;
    std::vector<SporadicTerm> terms;
    bool operator==(const SporadicRow&) const = default;
};

enum class NormShape { prime, prime_power, odd_prime_power, negative_odd_prime_power };

inline const char* to_string(NormShape s) {
    switch (s) {
        case NormShape::prime: return "p";
        case NormShape::prime_power: return "p^(k-1)";
        case NormShape::odd_prime_power: return "p^(2k-1)";
        case NormShape::negative_odd_prime_power: return "-p^(2k-1)";
    }
    return "?";
}

inline NormShape norm_shape_from_string(const std::string& s) {
    if (s == "p") return NormShape::prime;
    if (s == "p^(k-1)") return NormShape::prime_power;
    if (s == "p^(2k-1)") return NormShape::odd_prime_power;
    if (s == "-p^(2k-1)") return NormShape::negative_odd_prime_power;
    throw std::invalid_argument("unknown norm shape '" + s + "'");
}

struct ParametricRow {
    int id;
    int n;
    NormShape shape;
    std::string value_form;
    std::string constraint;
    bool operator==(const ParametricRow&) const = default;
};

// Rows of the Thue and quartic solution tables (ids 3..8).
struct SolutionRow {
    std::vector<i64> key;
    std::vector<IntPair> solutions;  // sorted lexicographically
    bool grh = false;
    bool operator==(const SolutionRow&) const = default;
};

struct SolutionTable {
    int id;
    std::string equation;
    std::vector<SolutionRow> rows;
    bool operator==(const SolutionTable&) const = default;
};

namespace detail {

// "pm" entries take the upper sign for +D and the lower sign for -D; "mp" the reverse.
struct SignedEntry {
    int coeff_x;
    i64 x;
    int coeff_y;
    i64 y;
};

inline constexpr int PM = 1;
inline constexpr int MP = -1;
inline constexpr int FIX = 0;

inline i64 apply(int c, i64 v, bool upper) {
    if (c == FIX) return v;
    return (c == PM) == upper ? v : -v;
}

inline std::vector<IntPair> expand(const std::vector<SignedEntry>& es, bool upper) {
    std::vector<IntPair> out;
    for (const auto& e : es) out.emplace_back(apply(e.coeff_x, e.x, upper), apply(e.coeff_y, e.y, upper));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline void add_rows(std::vector<SolutionRow>& rows, const std::vector<std::pair<i64, i64>>& keys, bool both_signs,
                     const std::vector<SignedEntry>& es, bool grh) {
    for (auto [d, D] : keys) {
        rows.push_back({{d, D}, expand(es, true), grh});
        if (both_signs) rows.push_back({{d, -D}, expand(es, false), grh});
    }
}

inline std::vector<IntPair> all_signs(const std::vector<IntPair>& base) {
    std::vector<IntPair> out;
    for (auto [x, y] : base)
        for (int sx : {1, -1})
            for (int sy : {1, -1}) out.emplace_back(sx * x, sy * y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<IntPair> y_signs(const std::vector<IntPair>& base) {
    std::vector<IntPair> out;
    for (auto [x, y] : base)
        for (int sy : {1, -1}) out.emplace_back(x, sy * y);
    std::sort(out.begin(), out.end());
    return out;
}

inline SolutionTable build_table3() {
    SolutionTable t{3, "F_{d-1}(X,Y) = D", {}};
    auto& r = t.rows;
    add_rows(r, {{7, 7}}, true, {{PM, 1, PM, 4}, {PM, 2, PM, 1}, {MP, 3, MP, 5}}, false);
    add_rows(r, {{7, 13}}, true,
             {{PM, 3, PM, 10}, {PM, 2, PM, 7}, {PM, 3, PM, 4}, {PM, 4, PM, 1}, {PM, 3, PM, 1}, {MP, 1, PM, 1},
              {MP, 2, MP, 5}, {MP, 5, MP, 8}, {MP, 7, MP, 11}},
             false);
    add_rows(r, {{7, 29}}, true,
             {{MP, 6, MP, 1}, {MP, 5, MP, 16}, {MP, 4, MP, 7}, {PM, 1, PM, 5}, {PM, 3, PM, 2}, {PM, 11, PM, 17}}, false);
    add_rows(r, {{11, 11}, {19, 19}, {23, 23}, {31, 31}}, true, {{PM, 1, PM, 4}}, false);
    add_rows(r, {{11, 23}}, true, {{PM, 3, PM, 2}, {PM, 2, PM, 1}, {MP, 2, MP, 3}}, false);
    add_rows(r, {{13, 13}, {17, 17}, {29, 29}, {37, 37}}, false, {{FIX, -1, FIX, -4}, {FIX, 1, FIX, 4}}, false);
    add_rows(r, {{13, -13}, {17, -17}, {29, -29}, {37, -37}}, false, {}, false);
    add_rows(r, {{19, 37}}, true, {{MP, 2, MP, 5}}, false);
    return t;
}

inline SolutionTable build_table4() {
    SolutionTable t{4, "F_{d-1}(X,Y) = D", {}};
    auto& r = t.rows;
    add_rows(r, {{7, 41}}, true, {{MP, 3, MP, 7}, {MP, 1, PM, 2}, {PM, 4, PM, 5}}, true);
    add_rows(r, {{41, 41}, {53, 53}, {61, 61}, {73, 73}, {89, 89}, {97, 97}}, false,
             {{FIX, -1, FIX, -4}, {FIX, 1, FIX, 4}}, true);
    add_rows(r, {{41, -41}, {13, 53}, {53, -53}, {61, -61}, {17, -67}, {73, -73}, {13, -79}, {89, -89}, {97, -97}},
             false, {}, true);
    add_rows(r, {{23, 47}, {29, 59}, {31, 61}, {37, 73}, {41, 83}}, true, {}, true);
    add_rows(r, {{7, 43}}, true, {{MP, 3, MP, 8}, {MP, 2, PM, 1}, {PM, 5, PM, 7}}, true);
    add_rows(r, {{11, 43}}, true, {{MP, 3, MP, 5}, {PM, 2, PM, 5}}, true);
    add_rows(r, {{43, 43}, {47, 47}, {59, 59}, {67, 67}, {71, 71}, {79, 79}, {83, 83}}, true, {{PM, 1, PM, 4}}, true);
    add_rows(r, {{13, -53}, {17, 67}}, false, {{FIX, -2, FIX, -3}, {FIX, 2, FIX, 3}}, true);
    add_rows(r, {{11, 67}}, true, {{MP, 7, MP, 12}, {MP, 3, MP, 11}, {MP, 2, MP, 7}}, true);
    add_rows(r, {{7, 71}}, true,
             {{MP, 16, MP, 25}, {MP, 5, MP, 9}, {PM, 1, PM, 6}, {PM, 4, PM, 3}, {PM, 7, PM, 23}, {PM, 9, PM, 2}}, true);
    add_rows(r, {{13, 79}}, false, {{FIX, -2, FIX, -5}, {FIX, 2, FIX, 5}}, true);
    add_rows(r, {{7, 83}}, true,
             {{MP, 8, MP, 13}, {MP, 7, MP, 1}, {MP, 6, MP, 19}, {PM, 3, PM, 11}, {PM, 5, PM, 2}, {PM, 13, PM, 20}}, true);
    add_rows(r, {{11, 89}}, true, {{MP, 1, PM, 1}}, true);
    add_rows(r, {{7, 97}}, true, {{MP, 4, MP, 11}, {MP, 3, PM, 1}, {PM, 7, PM, 10}}, true);
    return t;
}

inline SolutionTable build_quartic_table(int id, const std::string& eq,
                                         const std::vector<std::pair<i64, std::vector<IntPair>>>& nonempty,
                                         const std::vector<i64>& empty) {
    SolutionTable t{id, eq, {}};
    for (const auto& [l, base] : nonempty) t.rows.push_back({{l}, all_signs(base), false});
    for (i64 l : empty) t.rows.push_back({{l}, {}, false});
    return t;
}

inline SolutionTable build_table8() {
    SolutionTable t{8, "y^4 - 3xy^2 + x^2 = l", {}};
    const std::vector<std::pair<i64, std::vector<IntPair>>> rows = {
        {11, {{-2, 1}, {5, 1}}},
        {-19, {{5, 2}, {7, 2}}},
        {29, {{-4, 1}, {-1, 2}, {7, 1}, {13, 2}}},
        {-31, {{7, 4}, {19, 7}, {41, 4}, {128, 7}}},
        {41, {{-5, 1}, {5, 4}, {8, 1}, {43, 4}}},
        {59, {{46, 11}, {317, 11}}},
        {-61, {}},
        {71, {{-7, 1}, {10, 1}, {202, 23}, {1385, 23}}},
        {-79, {{11, 5}, {25, 8}, {64, 5}, {167, 8}}},
        {89, {{-8, 1}, {8, 5}, {11, 1}, {67, 5}}},
    };
    for (const auto& [l, base] : rows) t.rows.push_back({{l}, y_signs(base), false});
    return t;
}

inline std::vector<SolutionTable> build_solution_tables() {
    std::vector<SolutionTable> out;
    out.push_back(build_table3());
    out.push_back(build_table4());
    out.push_back(build_quartic_table(5, "y^4 - 3x^2y^2 + x^4 = l", {{5, {{1, 2}, {2, 1}}}, {31, {{3, 5}, {5, 3}}}},
                                      {11, 19, 29, 41, 59, 61, 71, 79, 89}));
    out.push_back(build_quartic_table(6, "y^4 - 3x^2y^2 + x^4 = l", {{-11, {{2, 3}, {3, 2}}}, {-79, {{5, 8}, {8, 5}}}},
                                      {-5, -19, -29, -31, -41, -59, -61, -71, -89}));
    out.push_back(build_quartic_table(7, "y^4 + 3x^2y^2 + x^4 = l", {{5, {{1, 1}}}, {29, {{1, 2}, {2, 1}}}},
                                      {11, 19, 31, 41, 59, 61, 71, 79, 89}));
    out.push_back(build_table8());
    return out;
}

}  // namespace detail

inline const std::vector<SporadicRow>& embedded_table1() {
    static const std::vector<SporadicRow> rows = {
        {1, 1, 2, {{5, -1}, {7, 7}, {8, -3}, {12, 45}, {13, -1}, {18, 85}, {30, -24475}}},
        {2, 1, 4, {{5, 5}, {12, -231}}},
        {3, 1, 3, {{5, 1}, {12, 160}}},
        {4, 1, 5, {{7, 1}, {12, -3024}}},
        {5, 2, 3, {{3, 1}, {10, -22}}},
        {6, 2, 7, {{8, -40}}},
        {7, 2, 11, {{5, 5}}},
        {8, 3, 4, {{4, 3}}},
        {9, 3, 8, {{3, 1}}},
        {10, 4, 5, {{6, 44}}},
        {11, 5, 8, {{6, 85}}},
        {12, 5, 7, {{10, -3725}}},
    };
    return rows;
}

inline const std::vector<ParametricRow>& embedded_table2() {
    using S = NormShape;
    static const std::vector<ParametricRow> rows = {
        {1, 3, S::prime, "-1", "p = m^2 + 1"},
        {2, 3, S::prime_power, "eps*3^r", "p^(k-1) = m^2 - eps*3^r, 3 !| m, r > 0"},
        {3, 3, S::negative_odd_prime_power, "3^r", "p^(2k-1) + m^2 = 3^r, 3 !| m, r > 0"},
        {4, 4, S::prime_power, "-+m", "2p^(k-1) = m^2 + 1"},
        {5, 4, S::prime_power, "+-2*eps*m", "2p^(k-1) = m^2 - 2*eps"},
        {6, 6, S::prime_power, "+-(-2)^r*m*(2m^2+(-2)^r)/3", "3p^(k-1) = m^2 - (-2)^r, r > 0"},
        {7, 6, S::negative_odd_prime_power, "+-(-2)^r*m*(2m^2+(-2)^r)/3", "3p^(2k-1) + m^2 = 2^r, r > 0"},
        {8, 6, S::odd_prime_power, "+-eps*m*(2m^2+3*eps)", "3p^(2k-1) = m^2 - 3*eps"},
        {9, 6, S::odd_prime_power, "+-2^(r+1)*eps*m*(m^2+3*eps*2^(r-1))", "3p^(2k-1) = m^2 - 3*eps*2^r, r > 0"},
        {10, 6, S::negative_odd_prime_power, "+-2^(r+1)*m*(m^2+3*2^(r-1))", "3p^(2k-1) + m^2 = 3*2^r, r > 0"},
    };
    return rows;
}

inline const std::vector<SolutionTable>& embedded_solution_tables() {
    static const std::vector<SolutionTable> tables = detail::build_solution_tables();
    return tables;
}

inline const SolutionTable& embedded_solution_table(int id) {
    if (id < 3 || id > 8) throw std::out_of_range("solution tables are numbered 3..8");
    return embedded_solution_tables()[static_cast<std::size_t>(id - 3)];
}

class NotInTable : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

inline const SolutionRow* find_row(const SolutionTable& t, const std::vector<i64>& key) {
    for (const auto& row : t.rows)
        if (row.key == key) return &row;
    return nullptr;
}

inline const SolutionRow& table_lookup(int id, const std::vector<i64>& key) {
    const auto* row = find_row(embedded_solution_table(id), key);
    if (!row) throw NotInTable("key not present in table " + std::to_string(id));
    return *row;
}

inline const SporadicRow& sporadic_lookup(i64 A, i64 B) {
    for (const auto& row : embedded_table1())
        if (row.A == (A < 0 ? -A : A) && row.B == B) return row;
    throw NotInTable("pair not present in table 1");
}

inline const ParametricRow& parametric_lookup(int id) {
    for (const auto& row : embedded_table2())
        if (row.id == id) return row;
    throw NotInTable("row not present in table 2");
}

}  // namespace lehmer
