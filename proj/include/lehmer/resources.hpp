#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lehmer/diophantine.hpp"
#include "lehmer/lucas.hpp"
#include "lehmer/tables.hpp"

#ifndef LEHMER_DEFAULT_RESOURCE_DIR
#define LEHMER_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace lehmer {

inline constexpr const char* kResourceEnv = "LEHMER_RESOURCE_DIR";

inline std::filesystem::path resource_dir() {
    if (const char* env = std::getenv(kResourceEnv); env && *env) return env;
    return LEHMER_DEFAULT_RESOURCE_DIR;
}

inline std::string table_file_name(int id) { return "table" + std::to_string(id) + ".json"; }

inline nlohmann::json table_to_json(int id) {
    using nlohmann::json;
    json rows = json::array();
    if (id == 1) {
        for (const auto& r : embedded_table1()) {
            json terms = json::array();
            for (const auto& t : r.terms) terms.push_back({{"n", t.n}, {"value", t.value}});
            rows.push_back({{"id", r.id}, {"A", r.A}, {"B", r.B}, {"terms", terms}});
        }
        return {{"id", 1}, {"kind", "sporadic"}, {"rows", rows}};
    }
    if (id == 2) {
        for (const auto& r : embedded_table2())
            rows.push_back({{"id", r.id}, {"n", r.n}, {"shape", to_string(r.shape)}, {"value", r.value_form},
                            {"constraint", r.constraint}});
        return {{"id", 2}, {"kind", "parametric"}, {"rows", rows}};
    }
    const auto& t = embedded_solution_table(id);
    for (const auto& r : t.rows) {
        json sols = json::array();
        for (auto [x, y] : r.solutions) sols.push_back({x, y});
        rows.push_back({{"key", r.key}, {"solutions", sols}, {"grh", r.grh}});
    }
    return {{"id", id}, {"kind", "solutions"}, {"equation", t.equation}, {"rows", rows}};
}

inline void export_tables(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (int id = 1; id <= 8; ++id) {
        std::ofstream out(dir / table_file_name(id));
        if (!out) throw std::runtime_error("cannot write " + (dir / table_file_name(id)).string());
        out << table_to_json(id).dump(2) << '\n';
    }
}

inline nlohmann::json load_table(const std::filesystem::path& dir, int id) {
    const auto path = dir / table_file_name(id);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in);
}

struct TableMismatch {
    int table;
    std::string key;
    std::string detail;
};

struct TableReport {
    std::vector<TableMismatch> mismatches;
    int rows_checked = 0;
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline SolutionSet solve_table_row(int id, const std::vector<i64>& key) {
    switch (id) {
        case 3:
        case 4: return solve_f(static_cast<int>(key[0]) - 1, key[1], kDefaultThueRadius);
        case 5:
        case 6: return solve_c4(-1, key[0], kDefaultQuarticRadius);
        case 7: return solve_c4(1, key[0], kDefaultQuarticRadius);
        case 8: return solve_w2_quartic(key[0], kDefaultW2Radius);
    }
    throw std::out_of_range("no solver for table " + std::to_string(id));
}

inline std::vector<IntPair> pairs_from_json(const nlohmann::json& j) {
    std::vector<IntPair> out;
    for (const auto& p : j) out.emplace_back(p.at(0).get<i64>(), p.at(1).get<i64>());
    return out;
}

}  // namespace detail

// Recomputes every row from the Lucas recurrence or the solvers and diffs the resource files.
inline TableReport verify_tables(const std::filesystem::path& dir) {
    TableReport rep;
    auto miss = [&](int t, std::string key, std::string what) { rep.mismatches.push_back({t, std::move(key), std::move(what)}); };
    for (int id = 1; id <= 8; ++id) {
        nlohmann::json file;
        try {
            file = load_table(dir, id);
        } catch (const std::exception& e) {
            miss(id, "-", e.what());
            continue;
        }
        const auto expected = table_to_json(id);
        if (file.value("id", 0) != id) miss(id, "-", "table id field differs");
        const auto& rows = file.contains("rows") ? file.at("rows") : nlohmann::json::array();
        if (rows.size() != expected.at("rows").size()) miss(id, "-", "row count differs from the embedded table");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            ++rep.rows_checked;
            const std::string key = id <= 2 ? std::to_string(row.value("id", 0)) : row.value("key", nlohmann::json()).dump();
            if (i >= expected.at("rows").size() || row != expected.at("rows")[i]) miss(id, key, "differs from the embedded row");
            try {
                if (id == 1) {
                    const i64 A = row.at("A").get<i64>(), B = row.at("B").get<i64>();
                    for (const auto& t : row.at("terms"))
                        if (lucas_term<BigInt>(BigInt(A), BigInt(B), t.at("n").get<int>()) != t.at("value").get<i64>())
                            miss(id, key, "u_" + std::to_string(t.at("n").get<int>()) + " differs from the recurrence");
                } else if (id >= 3) {
                    const auto k = row.at("key").get<std::vector<i64>>();
                    const auto s = detail::solve_table_row(id, k);
                    if (s.solutions != detail::pairs_from_json(row.at("solutions")))
                        miss(id, key, "solver output differs from the resource row");
                    const bool grh = row.at("grh").get<bool>();
                    if (grh != (id == 4)) miss(id, key, "GRH marker differs");
                }
            } catch (const std::exception& e) {
                miss(id, key, e.what());
            }
        }
    }
    return rep;
}

}  // namespace lehmer
