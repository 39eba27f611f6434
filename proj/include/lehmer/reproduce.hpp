#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "lehmer/certifier.hpp"
#include "lehmer/theorems.hpp"

namespace lehmer {

enum class EntryStatus { reproduced, not_reproduced, inconclusive };

inline const char* to_string(EntryStatus s) {
    switch (s) {
        case EntryStatus::reproduced: return "reproduced";
        case EntryStatus::not_reproduced: return "not-reproduced";
        case EntryStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ReproductionEntry {
    std::string list;  // "unconditional" or "grh"
    std::string lambda;
    i64 value;
    Verdict verdict;
    EntryStatus status;
};

struct RemarkCheck {
    std::string lambda;
    i64 n;
    i64 value;
    std::vector<i64> positions;  // witness_search hits up to max(n, bound)
    Verdict verdict;
    bool confirmed;  // n found and the value is not excluded
};

struct ReproductionReport {
    std::string id;
    bool grh = false;
    std::vector<ReproductionEntry> entries;
    std::vector<RemarkCheck> remarks;

    [[nodiscard]] int count(EntryStatus s) const {
        return static_cast<int>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.status == s; }));
    }
    [[nodiscard]] int remarks_unconfirmed() const {
        return static_cast<int>(std::count_if(remarks.begin(), remarks.end(), [](const auto& r) { return !r.confirmed; }));
    }
    [[nodiscard]] int exit_code() const {
        if (count(EntryStatus::not_reproduced) > 0 || remarks_unconfirmed() > 0) return 1;
        if (count(EntryStatus::inconclusive) > 0) return 2;
        return 0;
    }
};

namespace detail {

inline EntryStatus classify_entry(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::excluded:
        case VerdictKind::excluded_under_grh: return EntryStatus::reproduced;
        case VerdictKind::witness: return EntryStatus::not_reproduced;
        case VerdictKind::inconclusive: return EntryStatus::inconclusive;
    }
    return EntryStatus::inconclusive;
}

template <class T, class F>
std::vector<T> run_all(std::size_t count, unsigned jobs, F&& task) {
    std::vector<T> out(count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = task(i);
        return out;
    }
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < jobs; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < count; i = next++) out[i] = task(i);
        }));
    for (auto& w : workers) w.get();
    return out;
}

}  // namespace detail

inline ReproductionReport reproduce_theorem(const std::string& id, bool grh, unsigned jobs = 1,
                                            i64 coefficient_bound = kDefaultCoefficientBound) {
    const auto& t = theorem_target(id);
    ReproductionReport rep;
    rep.id = t.id;
    rep.grh = grh;

    struct Job {
        std::string list;
        std::optional<Rational> lambda;
        i64 value;
        bool grh;
    };
    std::vector<Job> work;
    std::vector<std::optional<Rational>> scopes;
    if (t.lambdas.empty()) scopes.emplace_back(std::nullopt);
    for (const auto& l : t.lambdas) scopes.emplace_back(l);
    for (const auto& scope : scopes) {
        for (i64 v : t.unconditional) work.push_back({"unconditional", scope, v, false});
        if (grh)
            for (i64 v : t.conditional) work.push_back({"grh", scope, v, true});
    }
    auto make = [&](const Job& j) {
        Constraint c = t.weight == 2 ? Constraint::weight2(t.torsion, j.grh)
                                     : (j.lambda ? Constraint::for_lambda(*j.lambda, j.grh) : Constraint::all_lambda(j.grh));
        c.coefficient_bound = coefficient_bound;
        return c;
    };
    rep.entries = detail::run_all<ReproductionEntry>(work.size(), jobs, [&](std::size_t i) {
        const auto& j = work[i];
        const auto cert = certify_value(j.value, make(j));
        return ReproductionEntry{j.list, j.lambda ? to_string(*j.lambda) : "all", j.value, cert.verdict,
                                 detail::classify_entry(cert.verdict)};
    });

    for (const auto& scope : scopes) {
        if (!scope) continue;
        for (const auto& rv : t.remark) {
            RemarkCheck rc{to_string(*scope), rv.n, rv.value, {}, {}, false};
            rc.positions = witness_search(rv.value, *scope, std::max(rv.n, coefficient_bound));
            Constraint c = Constraint::for_lambda(*scope, grh);
            c.coefficient_bound = coefficient_bound;
            rc.verdict = certify_value(rv.value, c).verdict;
            const bool found = std::find(rc.positions.begin(), rc.positions.end(), rv.n) != rc.positions.end();
            rc.confirmed = found && rc.verdict.kind == VerdictKind::witness;
            rep.remarks.push_back(std::move(rc));
        }
    }
    return rep;
}

inline Json to_json(const ReproductionReport& r) {
    Json entries = Json::array(), remarks = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"list", e.list}, {"lambda", e.lambda}, {"value", e.value}, {"verdict", to_json(e.verdict)},
                           {"status", to_string(e.status)}});
    for (const auto& m : r.remarks)
        remarks.push_back({{"lambda", m.lambda}, {"n", m.n}, {"value", m.value}, {"positions", m.positions},
                           {"verdict", to_json(m.verdict)}, {"confirmed", m.confirmed}});
    return {{"id", r.id},
            {"grh", r.grh},
            {"entries", entries},
            {"remarks", remarks},
            {"summary",
             {{"reproduced", r.count(EntryStatus::reproduced)},
              {"not_reproduced", r.count(EntryStatus::not_reproduced)},
              {"inconclusive", r.count(EntryStatus::inconclusive)},
              {"remarks_unconfirmed", r.remarks_unconfirmed()}}}};
}

}  // namespace lehmer
