#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

struct RemarkValue {
    i64 n;
    i64 value;
};

struct TheoremTarget {
    std::string id;
    int weight;
    int torsion = 0;                 // weight 2 only
    std::vector<Rational> lambdas;   // empty = all-lambda (weight 3) or not applicable
    std::vector<i64> unconditional;  // claimed excluded values
    std::vector<i64> conditional;    // claimed excluded under GRH
    std::vector<RemarkValue> remark; // claimed witnesses
};

namespace detail {

// Each entry is v (only +v), -v, or a "both signs" marker via pm().
struct ListBuilder {
    std::vector<i64> out;
    ListBuilder& pm(std::initializer_list<i64> vs) {
        for (i64 v : vs) {
            out.push_back(v);
            out.push_back(-v);
        }
        return *this;
    }
    ListBuilder& one(std::initializer_list<i64> vs) {
        for (i64 v : vs) out.push_back(v);
        return *this;
    }
};

inline std::vector<i64> grh_lambda_list() {
    return ListBuilder{}.pm({41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}).out;
}

}  // namespace detail

inline const std::vector<TheoremTarget>& theorem_targets() {
    using detail::ListBuilder;
    static const std::vector<TheoremTarget> targets = [] {
        std::vector<TheoremTarget> t;
        t.push_back({"1.1-1", 2, 3, {},
                     {5, -7, 11, -13, 17, 23, -25, 35, -37, -49, -55, 65, -73, 77, -85, -91, -97},
                     {-43, 47, 53, 59, -61, -67, 71, -73, -79, 83, 89},
                     {}});
        t.push_back({"1.1-2", 2, 5, {}, {-11, -31, -41, -61, -71, -101}, {}, {}});
        t.push_back({"1.2-λ1", 3, 0, {Rational(1)},
                     ListBuilder{}
                         .pm({1, 3})
                         .one({5})
                         .pm({7, 9})
                         .one({11})
                         .pm({13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39, 45})
                         .one({-49})
                         .pm({51})
                         .one({-55})
                         .pm({57, 63, 65, 69})
                         .one({-75})
                         .pm({77, 85, 87, 91, 95, 99})
                         .out,
                     detail::grh_lambda_list(),
                     {{9, -5}, {81, -11}, {49, 49}, {729, 55}, {121, 75}}});
        t.push_back({"1.2-λ8", 3, 0, {Rational(8), Rational(1, 8)},
                     ListBuilder{}
                         .pm({1, 3, 5, 7})
                         .one({-9, -11})
                         .pm({13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39, 45})
                         .one({-49})
                         .pm({51, 55, 57, 63, 65})
                         .one({69})
                         .pm({75, 77, 85, 87, 91, 95})
                         .one({-99})
                         .out,
                     detail::grh_lambda_list(),
                     {{9, 9}, {25, 11}, {49, 49}, {169, -69}, {225, 99}}});
        t.push_back({"1.2-λ-4", 3, 0, {Rational(-4), Rational(-1, 4)},
                     ListBuilder{}
                         .pm({1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23})
                         .one({-25})
                         .pm({27, 29, 31, 33, 35, 37, 39})
                         .one({45})
                         .pm({49, 51, 55, 57, 63, 65, 69, 75, 77, 85, 87, 91, 95, 99})
                         .out,
                     detail::grh_lambda_list(),
                     {{25, 25}, {49, -45}}});
        t.push_back({"1.2-λ-64", 3, 0, {Rational(-64), Rational(-1, 64)},
                     ListBuilder{}
                         .pm({1, 3, 5, 7})
                         .one({-9})
                         .pm({11, 13, 15, 17, 19, 21, 23})
                         .one({-25})
                         .pm({27, 29, 31, 33, 35, 37, 39, 45, 49, 51, 55, 57, 63, 65, 69})
                         .one({-75})
                         .pm({77, 85, 87, 91, 95, 99})
                         .out,
                     detail::grh_lambda_list(),
                     {{9, 9}, {25, 25}, {1369, 75}}});
        t.push_back({"1.3", 3, 0, {},
                     ListBuilder{}
                         .pm({1, 3})
                         .one({5, -7, -15})
                         .pm({17, 19})
                         .one({21, -23, -27, -29})
                         .pm({31})
                         .one({33, 37, -39, -51, 57, 69, -87})
                         .out,
                     ListBuilder{}.one({-41}).pm({43}).one({-47, -53, -59}).pm({67, 71}).one({79, -83, -89}).pm({97}).out,
                     {}});
        return t;
    }();
    return targets;
}

inline std::string canonical_theorem_id(const std::string& id) {
    if (id == "1.2-λ1" || id == "1.2-l1" || id == "1.2-lambda1") return "1.2-λ1";
    if (id == "1.2-λ8" || id == "1.2-l8" || id == "1.2-lambda8") return "1.2-λ8";
    if (id == "1.2-λ-4" || id == "1.2-l-4" || id == "1.2-lambda-4") return "1.2-λ-4";
    if (id == "1.2-λ-64" || id == "1.2-l-64" || id == "1.2-lambda-64") return "1.2-λ-64";
    return id;
}

inline const TheoremTarget& theorem_target(const std::string& id) {
    const std::string c = canonical_theorem_id(id);
    for (const auto& t : theorem_targets())
        if (t.id == c) return t;
    throw std::invalid_argument("unknown theorem id '" + id + "'");
}

}  // namespace lehmer
