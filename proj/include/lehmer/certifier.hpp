#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "lehmer/arith.hpp"
#include "lehmer/diophantine.hpp"
#include "lehmer/lucas.hpp"
#include "lehmer/sources.hpp"
#include "lehmer/tables.hpp"

namespace lehmer {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr i64 kValueEnvelope = 101;
inline constexpr i64 kDefaultCoefficientBound = 2048;
inline constexpr int kDegenerateMaxExponent = 63;

struct Radii {
    i64 thue = kDefaultThueRadius;
    i64 quartic = kDefaultQuarticRadius;
    i64 w2q = kDefaultW2Radius;
    bool operator==(const Radii&) const = default;
};

enum class ScenarioKind { weight2_torsion, weight3_all, weight3_lambda };

inline const char* to_string(ScenarioKind s) {
    switch (s) {
        case ScenarioKind::weight2_torsion: return "weight2-torsion";
        case ScenarioKind::weight3_all: return "weight3-all";
        case ScenarioKind::weight3_lambda: return "weight3-lambda";
    }
    return "?";
}

inline ScenarioKind scenario_from_string(const std::string& s) {
    for (auto k : {ScenarioKind::weight2_torsion, ScenarioKind::weight3_all, ScenarioKind::weight3_lambda})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown scenario '" + s + "'");
}

struct Constraint {
    ScenarioKind scenario = ScenarioKind::weight3_all;
    int torsion = 0;
    std::optional<Rational> lambda;
    bool grh = false;
    i64 coefficient_bound = kDefaultCoefficientBound;
    Radii radii;

    [[nodiscard]] int weight() const { return scenario == ScenarioKind::weight2_torsion ? 2 : 3; }

    static Constraint weight2(int torsion, bool grh = false) {
        Constraint c;
        c.scenario = ScenarioKind::weight2_torsion;
        c.torsion = torsion;
        c.grh = grh;
        c.validate();
        return c;
    }
    static Constraint all_lambda(bool grh = false) {
        Constraint c;
        c.grh = grh;
        return c;
    }
    static Constraint for_lambda(const Rational& lambda, bool grh = false) {
        Constraint c;
        c.scenario = ScenarioKind::weight3_lambda;
        c.lambda = lambda;
        c.grh = grh;
        c.validate();
        return c;
    }

    void validate() const {
        if (scenario == ScenarioKind::weight2_torsion && torsion != 3 && torsion != 5)
            throw std::invalid_argument("weight 2 requires torsion 3 or 5");
        if (scenario != ScenarioKind::weight2_torsion && torsion != 0)
            throw std::invalid_argument("torsion applies to weight 2 only");
        if (scenario == ScenarioKind::weight3_lambda) {
            if (!lambda) throw std::invalid_argument("weight3-lambda needs a lambda");
            require_lambda(*lambda);
        } else if (lambda) {
            throw std::invalid_argument("lambda applies to the weight3-lambda scenario only");
        }
        if (coefficient_bound < 1 || coefficient_bound > kMaxSeriesLength)
            throw std::invalid_argument("coefficient bound out of range");
        if (radii.thue < 1 || radii.quartic < 1 || radii.w2q < 1) throw std::invalid_argument("radii must be positive");
    }

    // Everything that can change a locus analysis.
    [[nodiscard]] std::string key() const {
        std::string k = to_string(scenario);
        k += "|" + std::to_string(torsion) + "|" + (lambda ? to_string(*lambda) : "-") + "|" + (grh ? "grh" : "nogrh");
        k += "|" + std::to_string(radii.thue) + "|" + std::to_string(radii.quartic) + "|" + std::to_string(radii.w2q);
        return k;
    }

    bool operator==(const Constraint&) const = default;
};

inline Json to_json(const Radii& r) { return {{"thue", r.thue}, {"quartic", r.quartic}, {"w2q", r.w2q}}; }

inline Radii radii_from_json(const Json& j) { return {j.at("thue").get<i64>(), j.at("quartic").get<i64>(), j.at("w2q").get<i64>()}; }

inline Json to_json(const Constraint& c) {
    Json j{{"weight", c.weight()},
           {"scenario", to_string(c.scenario)},
           {"grh", c.grh},
           {"coefficient_bound", c.coefficient_bound}};
    if (c.scenario == ScenarioKind::weight2_torsion) j["torsion"] = c.torsion;
    if (c.lambda) j["lambda"] = to_string(*c.lambda);
    return j;
}

inline Constraint constraint_from_json(const Json& j, const Radii& radii) {
    Constraint c;
    c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    if (j.contains("torsion")) c.torsion = j.at("torsion").get<int>();
    if (j.contains("lambda")) c.lambda = parse_rational(j.at("lambda").get<std::string>());
    c.grh = j.at("grh").get<bool>();
    c.coefficient_bound = j.at("coefficient_bound").get<i64>();
    c.radii = radii;
    if (j.at("weight").get<int>() != c.weight()) throw std::invalid_argument("constraint weight does not match scenario");
    c.validate();
    return c;
}

struct Step {
    std::string claim;
    std::string anchor;
    Json data;
    bool operator==(const Step&) const = default;
};

inline Json to_json(const Step& s) { return {{"claim", s.claim}, {"anchor", s.anchor}, {"data", s.data}}; }

// Exponent sets.

inline std::vector<int> candidate_exponents(i64 ell) {
    const i64 q = ell < 0 ? -ell : ell;
    if (q < 3 || !is_prime(q)) throw std::invalid_argument("candidate_exponents: argument must be an odd prime");
    std::set<int> out{4};
    for (i64 r : prime_divisors(checked::mul(q, checked::mul(q - 1, q + 1)))) out.insert(static_cast<int>(r));
    return {out.begin(), out.end()};
}

// Exponent set for an arbitrary odd target: prime powers use the prime rule; otherwise the union over the
// primes of the target plus odd squares c^2 dividing q(q^2-1).
inline std::vector<int> locus_exponents(i64 alpha) {
    const auto f = factorize(alpha < 0 ? -alpha : alpha);
    if (f.factors.empty()) throw std::invalid_argument("locus_exponents: target must have a prime factor");
    std::set<int> out;
    if (f.factors.size() == 1) {
        auto c = candidate_exponents(f.factors[0].first);
        out.insert(c.begin(), c.end());
    } else {
        for (auto [q, e] : f.factors) {
            const i64 v = checked::mul(q, checked::mul(q - 1, q + 1));
            for (i64 r : prime_divisors(v)) {
                out.insert(static_cast<int>(r));
                if (r > 2 && v % (r * r) == 0) out.insert(static_cast<int>(r * r));
            }
        }
    }
    return {out.begin(), out.end()};
}

inline std::vector<int> parity_filter(const std::vector<int>& exponents) {
    std::vector<int> out;
    for (int d : exponents)
        if (d % 2 == 1) out.push_back(d);
    return out;
}

struct CongruenceClass {
    int d;
    std::vector<i64> residues;  // p mod ell_t admitting alpha
    bool operator==(const CongruenceClass&) const = default;
};

inline i64 geometric_sum_mod(i64 r, int d, i64 ell) {
    i64 s = 0, pw = 1;
    for (int i = 0; i < d; ++i) {
        s = (s + pw) % ell;
        pw = pw * r % ell;
    }
    return s;
}

// a(p^(d-1)) = 1 + p + ... + p^(d-1) mod ell_t; keeps (d, p mod ell_t) pairs that reach alpha.
inline std::vector<CongruenceClass> congruence_filter(int torsion, i64 alpha, const std::vector<int>& exponents) {
    if (torsion != 3 && torsion != 5) throw std::invalid_argument("congruence_filter: torsion must be 3 or 5");
    std::vector<CongruenceClass> out;
    const i64 target = mod(alpha, torsion);
    for (int d : exponents) {
        CongruenceClass c{d, {}};
        for (i64 r = 1; r < torsion; ++r)
            if (geometric_sum_mod(r, d, torsion) == target) c.residues.push_back(r);
        if (!c.residues.empty()) out.push_back(std::move(c));
    }
    return out;
}

// Locus analysis for a single prime power n = p^(d-1).

struct Candidate {
    i64 p;
    i64 a;
    int chi;
    int d;
    std::string status;  // "survives" or the rejecting filter

    [[nodiscard]] auto tie() const { return std::tie(p, a, chi, d); }
    bool operator<(const Candidate& o) const { return tie() < o.tie(); }
    bool operator==(const Candidate& o) const { return tie() == o.tie() && status == o.status; }
};

inline Json to_json(const Candidate& c) {
    return {{"p", c.p}, {"a", c.a}, {"chi", c.chi}, {"d", c.d}, {"status", c.status}};
}

struct LocusAnalysis {
    i64 value = 0;
    std::vector<Step> steps;
    std::vector<Candidate> survivors;  // sorted
    std::vector<std::string> open;     // reasons the analysis cannot close
    bool grh_used = false;

    [[nodiscard]] bool excluded() const { return survivors.empty() && open.empty(); }
};

namespace detail {

struct LocusContext {
    const Constraint& constraint;
    const CoefficientSource* source;  // weight3-lambda only
    i64 alpha;
    std::vector<CongruenceClass> classes;
};

inline std::string judge(const LocusContext& ctx, i64 p, i64 a, int chi, int d) {
    const Constraint& c = ctx.constraint;
    if (p < 3 || !is_prime(p)) return "p-not-odd-prime";
    if (c.scenario == ScenarioKind::weight2_torsion && p == c.torsion) return "p-is-torsion-prime";
    if (ctx.source && ctx.source->is_bad(p)) return "bad-prime";
    if (a % 2 != 0) return "parity";
    if (c.weight() == 2) {
        if (chi != 1) return "character";
        if (checked::mul(a, a) > checked::mul(4, p)) return "deligne";
        if (mod(a - p - 1, c.torsion) != 0) return "torsion-congruence";
        auto it = std::find_if(ctx.classes.begin(), ctx.classes.end(), [&](const auto& k) { return k.d == d; });
        if (it == ctx.classes.end() ||
            std::find(it->residues.begin(), it->residues.end(), mod(p, c.torsion)) == it->residues.end())
            return "torsion-congruence";
    } else {
        if ((a < 0 ? -a : a) > 2 * p) return "deligne";
    }
    const BigInt B = BigInt(chi) * (c.weight() == 2 ? BigInt(p) : BigInt(p) * p);
    if (lucas_term<BigInt>(BigInt(a), B, d) != ctx.alpha) return "equation";
    if (ctx.source) {
        const auto loc = ctx.source->local(p);
        if (loc.a != a || loc.chi != chi) return "coefficient-mismatch";
    }
    return "survives";
}

inline Json defect_note(int weight, i64 a, i64 B, int d) {
    if (a == 0 || a % 2 != 0) return nullptr;
    try {
        const auto pair = make_pair(a, B);
        const auto od = odd_defect_filter(weight, pair, d);
        if (od.kind == DefectKind::none) return nullptr;
        return {{"kind", to_string(od.kind)}, {"row", od.row}};
    } catch (const InvalidPairError&) {
        return nullptr;
    }
}

inline Json solution_json(const SolutionSet& s) {
    Json sols = Json::array();
    for (auto [x, y] : s.solutions) sols.push_back({x, y});
    Json j{{"equation", to_string(s.problem.kind)},
           {"describe", s.problem.describe()},
           {"rhs", s.problem.D},
           {"radius", s.problem.radius},
           {"completeness", to_string(s.completeness)},
           {"table", s.table_id},
           {"solutions", sols}};
    if (s.problem.kind == EquationKind::F) j["index"] = s.problem.index;
    if (s.problem.kind == EquationKind::C2 || s.problem.kind == EquationKind::C4) j["sign"] = s.problem.sign;
    return j;
}

inline ThueProblem problem_from_json(const Json& j) {
    ThueProblem pr{equation_from_string(j.at("equation").get<std::string>())};
    pr.D = j.at("rhs").get<i64>();
    pr.radius = j.at("radius").get<i64>();
    if (j.contains("index")) pr.index = j.at("index").get<int>();
    if (j.contains("sign")) pr.sign = j.at("sign").get<int>();
    return pr;
}

struct RawPoint {
    i64 p;
    i64 a;
    int chi;
    bool operator<(const RawPoint& o) const { return std::tie(p, a, chi) < std::tie(o.p, o.a, o.chi); }
};

}  // namespace detail

inline LocusAnalysis analyze_locus_uncached(i64 alpha, const Constraint& c) {
    c.validate();
    if (alpha % 2 == 0 || (alpha < 0 ? -alpha : alpha) < 3)
        throw std::invalid_argument("analyze_locus: target must be odd with |alpha| >= 3");
    std::shared_ptr<const CoefficientSource> src;
    if (c.scenario == ScenarioKind::weight3_lambda) src = coefficient_source(*c.lambda);
    detail::LocusContext ctx{c, src.get(), alpha, {}};
    LocusAnalysis out;
    out.value = alpha;
    const int k = c.weight();

    const auto all = locus_exponents(alpha);
    const auto f = factorize(alpha < 0 ? -alpha : alpha);
    {
        Json primes = Json::array();
        for (auto [q, e] : f.factors) primes.push_back({q, e});
        out.steps.push_back({"ord_p(n)+1 lies in the exponent set for alpha = " + std::to_string(alpha),
                             "exponent-divisibility",
                             {{"alpha", alpha}, {"factorization", primes}, {"exponents", all}}});
    }
    auto odd = parity_filter(all);
    out.steps.push_back({"a(p) is even, so a(p^(d-1)) is odd only for odd d", "parity",
                         {{"alpha", alpha}, {"before", all}, {"after", odd}}});
    std::vector<int> ds = odd;
    if (k == 2) {
        ctx.classes = congruence_filter(c.torsion, alpha, odd);
        Json cls = Json::array();
        ds.clear();
        for (const auto& cc : ctx.classes) {
            cls.push_back({{"d", cc.d}, {"residues", cc.residues}});
            ds.push_back(cc.d);
        }
        out.steps.push_back({"a(p^(d-1)) = 1 + p + ... + p^(d-1) mod " + std::to_string(c.torsion), "torsion-congruence",
                             {{"alpha", alpha}, {"torsion", c.torsion}, {"classes", cls}, {"after", ds}}});
    }

    std::set<Candidate> found;
    auto consider = [&](std::vector<detail::RawPoint> pts, int d, Json& log) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const auto& x, const auto& y) { return !(x < y) && !(y < x); }),
                  pts.end());
        for (const auto& pt : pts) {
            Candidate cand{pt.p, pt.a, pt.chi, d, detail::judge(ctx, pt.p, pt.a, pt.chi, d)};
            Json entry = to_json(cand);
            const i64 B = pt.chi * (k == 2 ? pt.p : pt.p * pt.p);
            if (pt.p >= 3 && pt.p < 3037000499LL) {
                Json note = detail::defect_note(k, pt.a, B, d);
                if (!note.is_null()) entry["defect"] = note;
            }
            log.push_back(entry);
            if (cand.status == "survives") found.insert(cand);
        }
    };

    for (int d : ds) {
        Json log = Json::array();
        std::vector<detail::RawPoint> pts;
        auto record_solve = [&](const SolutionSet& s, const std::string& claim) {
            out.steps.push_back({claim, "equation", {{"alpha", alpha}, {"d", d}, {"solve", detail::solution_json(s)}}});
        };
        if (d == 3) {
            if (k == 2) {
                out.open.push_back("d=3: a(p)^2 - p = " + std::to_string(alpha) + " has infinitely many integer points");
                out.steps.push_back({"d=3 leaves an unbounded family that only torsion congruences can close",
                                     "open-locus", {{"alpha", alpha}, {"d", 3}}});
                continue;
            }
            for (int chi : {1, -1}) {
                const auto s = solve_c2(chi, alpha);
                record_solve(s, "u_3(a, chi p^2) = a^2 - chi p^2");
                for (auto [x, y] : s.solutions)
                    if (x > 0) pts.push_back({x, y, chi});
            }
        } else if (d == 5) {
            if (k == 2) {
                const auto s = solve_w2_quartic(alpha, c.radii.w2q);
                record_solve(s, "u_5(a, p) = a^4 - 3a^2 p + p^2");
                for (auto [x, y] : s.solutions) pts.push_back({x, y, 1});
            } else {
                for (int chi : {1, -1}) {
                    const auto s = solve_c4(-chi, alpha, c.radii.quartic);
                    record_solve(s, "u_5(a, chi p^2) = a^4 - 3 chi a^2 p^2 + p^4");
                    for (auto [x, y] : s.solutions)
                        if (x > 0) pts.push_back({x, y, chi});
                }
            }
        } else {
            const std::vector<i64> key{d, alpha};
            const bool in_t4 = find_row(embedded_solution_table(4), key) != nullptr;
            const bool in_t3 = find_row(embedded_solution_table(3), key) != nullptr;
            if (in_t4 && !in_t3 && !c.grh) {
                out.open.push_back("d=" + std::to_string(d) + ": F_" + std::to_string(d - 1) + " = " +
                                   std::to_string(alpha) + " is closed only under GRH");
                out.steps.push_back({"the Thue equation for this d is tabulated only under GRH", "open-locus",
                                     {{"alpha", alpha}, {"d", d}, {"table", 4}}});
                continue;
            }
            const auto s = solve_f(d - 1, alpha, c.radii.thue);
            if (s.completeness == Completeness::conditional_grh) out.grh_used = true;
            if (in_t4 && !in_t3 && s.completeness != Completeness::conditional_grh) {
                out.open.push_back("d=" + std::to_string(d) + ": search disagrees with the conditional table");
            }
            if (in_t3 && s.completeness != Completeness::table_certified) {
                out.open.push_back("d=" + std::to_string(d) + ": search disagrees with the certified table");
            }
            record_solve(s, "u_d(a, B) = F_{d-1}(B, a^2) with B = chi p^(k-1)");
            for (auto [X, Y] : s.solutions) {
                auto r = exact_sqrt(Y);
                if (!r) continue;
                if (k == 2) {
                    pts.push_back({X, *r, 1});
                    pts.push_back({X, -*r, 1});
                } else {
                    for (int chi : {1, -1}) {
                        auto p = exact_sqrt(chi * X);
                        if (!p || *p == 0) continue;
                        pts.push_back({*p, *r, chi});
                        pts.push_back({*p, -*r, chi});
                    }
                }
            }
        }
        consider(pts, d, log);
        out.steps.push_back({"candidate local data for d = " + std::to_string(d), "locus-filter",
                             {{"alpha", alpha}, {"d", d}, {"candidates", log}}});
    }

    // p dividing a(p): a in {0} (weight 2) or {0, +-2p} (weight 3), any odd d.
    {
        Json log = Json::array();
        for (auto [p, e] : f.factors) {
            std::vector<i64> as{0};
            if (k == 3) {
                as.push_back(2 * p);
                as.push_back(-2 * p);
            }
            for (int chi : k == 2 ? std::vector<int>{1} : std::vector<int>{1, -1})
                for (i64 a : as)
                    for (int d = 3; d <= kDegenerateMaxExponent; d += 2) {
                        const BigInt B = BigInt(chi) * (k == 2 ? BigInt(p) : BigInt(p) * p);
                        if (lucas_term<BigInt>(BigInt(a), B, d) != alpha) continue;
                        Candidate cand{p, a, chi, d, detail::judge(ctx, p, a, chi, d)};
                        log.push_back(to_json(cand));
                        if (cand.status == "survives") found.insert(cand);
                    }
        }
        out.steps.push_back({"loci with p dividing a(p) and p dividing alpha", "coprime-reduction",
                             {{"alpha", alpha}, {"max_d", kDegenerateMaxExponent}, {"candidates", log}}});
    }
    out.survivors.assign(found.begin(), found.end());
    return out;
}

inline LocusAnalysis analyze_locus(i64 alpha, const Constraint& c) {
    static Memo<std::pair<i64, std::string>, LocusAnalysis> memo;
    return memo.get({alpha, c.key()}, [&] { return analyze_locus_uncached(alpha, c); });
}

// Multiplicative partitions of |alpha| into factors >= 3, with every sign pattern of the right product.
inline std::vector<std::vector<i64>> signed_partitions(i64 alpha) {
    const i64 mag = alpha < 0 ? -alpha : alpha;
    std::vector<std::vector<i64>> unsigned_parts;
    std::vector<i64> cur;
    std::function<void(i64, i64)> rec = [&](i64 rest, i64 min_factor) {
        if (rest == 1) {
            if (!cur.empty()) unsigned_parts.push_back(cur);
            return;
        }
        for (i64 f = min_factor; f <= rest; ++f) {
            if (rest % f) continue;
            cur.push_back(f);
            rec(rest / f, f);
            cur.pop_back();
        }
    };
    rec(mag, 3);
    std::set<std::vector<i64>> out;
    const int want = alpha < 0 ? -1 : 1;
    for (const auto& part : unsigned_parts) {
        const std::size_t n = part.size();
        for (u64 mask = 0; mask < (u64{1} << n); ++mask) {
            int sign = 1;
            std::vector<i64> v(part);
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) {
                    v[i] = -v[i];
                    sign = -sign;
                }
            if (sign != want) continue;
            std::sort(v.begin(), v.end());
            out.insert(v);
        }
    }
    std::vector<std::vector<i64>> res(out.begin(), out.end());
    std::stable_sort(res.begin(), res.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    return res;
}

enum class VerdictKind { excluded, excluded_under_grh, witness, inconclusive };

inline const char* to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::excluded: return "excluded";
        case VerdictKind::excluded_under_grh: return "excluded-under-GRH";
        case VerdictKind::witness: return "witness";
        case VerdictKind::inconclusive: return "inconclusive";
    }
    return "?";
}

inline VerdictKind verdict_from_string(const std::string& s) {
    for (auto v : {VerdictKind::excluded, VerdictKind::excluded_under_grh, VerdictKind::witness, VerdictKind::inconclusive})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

struct Verdict {
    VerdictKind kind = VerdictKind::inconclusive;
    i64 n = 0;            // witness index
    std::string source;   // witness source
    std::string reason;   // inconclusive reason
    bool operator==(const Verdict&) const = default;
};

inline Json to_json(const Verdict& v) {
    Json j{{"kind", to_string(v.kind)}};
    if (v.kind == VerdictKind::witness) {
        j["n"] = v.n;
        j["source"] = v.source;
    }
    if (v.kind == VerdictKind::inconclusive) j["reason"] = v.reason;
    return j;
}

inline Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.kind = verdict_from_string(j.at("kind").get<std::string>());
    if (j.contains("n")) v.n = j.at("n").get<i64>();
    if (j.contains("source")) v.source = j.at("source").get<std::string>();
    if (j.contains("reason")) v.reason = j.at("reason").get<std::string>();
    return v;
}

struct ExclusionCertificate {
    i64 target = 0;
    Constraint constraint;
    std::vector<Step> steps;
    Verdict verdict;
    bool grh_used = false;
    std::string tool_version = kToolVersion;

    [[nodiscard]] bool is_excluded() const {
        return verdict.kind == VerdictKind::excluded || verdict.kind == VerdictKind::excluded_under_grh;
    }
};

inline Json to_json(const ExclusionCertificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps) steps.push_back(to_json(s));
    return {{"target", c.target},   {"constraint", to_json(c.constraint)}, {"steps", steps},
            {"verdict", to_json(c.verdict)}, {"grh_used", c.grh_used}, {"tool_version", c.tool_version},
            {"radii", to_json(c.constraint.radii)}};
}

inline ExclusionCertificate certificate_from_json(const Json& j) {
    ExclusionCertificate c;
    c.target = j.at("target").get<i64>();
    c.constraint = constraint_from_json(j.at("constraint"), radii_from_json(j.at("radii")));
    for (const auto& s : j.at("steps"))
        c.steps.push_back({s.at("claim").get<std::string>(), s.at("anchor").get<std::string>(), s.at("data")});
    c.verdict = verdict_from_json(j.at("verdict"));
    c.grh_used = j.at("grh_used").get<bool>();
    c.tool_version = j.at("tool_version").get<std::string>();
    return c;
}

inline void require_target(i64 alpha) {
    if (alpha % 2 == 0) throw std::invalid_argument("target must be odd");
    if (alpha > kValueEnvelope || alpha < -kValueEnvelope)
        throw std::invalid_argument("target outside the supported envelope |alpha| <= " + std::to_string(kValueEnvelope));
}

// |a(n)| = 1 is impossible: the relevant odd defective Lucas values are ruled out.
inline std::vector<Step> unit_exclusion(const Constraint& c) {
    c.validate();
    std::vector<Step> out;
    if (c.weight() == 2) {
        const i64 t = c.torsion;
        // u_3 = a^2 - p = -1 forces p = a^2 + 1; with a = p + 1 mod t that needs a^2 - a + 2 = 0 mod t.
        Json residues = Json::array();
        bool any = false;
        for (i64 a = 0; a < t; ++a) {
            const i64 v = mod(a * a - a + 2, t);
            residues.push_back({a, v});
            any = any || v == 0;
        }
        out.push_back({"u_3(a, p) = -1 needs a^2 - a + 2 = 0 mod " + std::to_string(t), "unit-lemma",
                       {{"torsion", t}, {"residues", residues}, {"solvable", any}}});
        // Sporadic u_3(+-2, 3) = 1: p = 3 or a = p + 1 mod t fails.
        Json spor = Json::array();
        for (i64 a : {2, -2}) {
            std::string why = t == 3 ? "p-is-torsion-prime" : (mod(a - 4, t) == 0 ? "survives" : "torsion-congruence");
            spor.push_back({{"a", a}, {"p", 3}, {"d", 3}, {"status", why}});
        }
        out.push_back({"sporadic u_3(+-2, 3) = 1 is ruled out", "unit-lemma", {{"torsion", t}, {"cases", spor}}});
    } else {
        // u_3(a, chi p^2) = a^2 - chi p^2 = +-1 with even a and odd p: the only parametric row shape needs B prime.
        Json rows = Json::array();
        for (int row = 1; row <= 3; ++row) {
            const auto& r = parametric_lookup(row);
            rows.push_back({{"row", row}, {"shape", to_string(r.shape)}, {"applies", r.shape != NormShape::prime}});
        }
        out.push_back({"no odd defective unit applies to B = chi p^2", "unit-lemma", {{"rows", rows}}});
    }
    return out;
}

namespace detail {

struct Assignment {
    std::vector<Candidate> picks;
    BigInt n;
};

inline std::optional<Assignment> best_assignment(const std::vector<const LocusAnalysis*>& factors) {
    std::optional<Assignment> best;
    std::vector<Candidate> picks;
    std::set<i64> used;
    std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t i, const BigInt& n) {
        if (i == factors.size()) {
            if (!best || n < best->n) best = Assignment{picks, n};
            return;
        }
        for (const auto& cand : factors[i]->survivors) {
            if (used.count(cand.p)) continue;
            BigInt m = n;
            for (int e = 1; e < cand.d; ++e) m *= cand.p;
            used.insert(cand.p);
            picks.push_back(cand);
            rec(i + 1, m);
            picks.pop_back();
            used.erase(cand.p);
        }
    };
    rec(0, BigInt(1));
    return best;
}

}  // namespace detail

inline ExclusionCertificate certify_value(i64 alpha, const Constraint& c) {
    c.validate();
    require_target(alpha);
    ExclusionCertificate cert;
    cert.target = alpha;
    cert.constraint = c;

    if (alpha == 1 || alpha == -1) {
        cert.steps = unit_exclusion(c);
        cert.verdict.kind = VerdictKind::excluded;
        return cert;
    }

    const auto parts = signed_partitions(alpha);
    {
        Json pj = Json::array();
        for (const auto& p : parts) pj.push_back(p);
        cert.steps.push_back({"a(n) is multiplicative; each prime-power factor is odd and not a unit", "multiplicativity",
                              {{"alpha", alpha}, {"partitions", pj}}});
    }
    std::set<i64> values;
    for (const auto& p : parts) values.insert(p.begin(), p.end());
    std::map<i64, LocusAnalysis> loci;
    for (i64 v : values) loci.emplace(v, analyze_locus(v, c));
    for (const auto& [v, la] : loci) {
        for (const auto& s : la.steps) cert.steps.push_back(s);
        Json surv = Json::array();
        for (const auto& cand : la.survivors) surv.push_back(to_json(cand));
        cert.steps.push_back({"local summary for value " + std::to_string(v), "locus-summary",
                              {{"value", v}, {"survivors", surv}, {"open", la.open}, {"grh", la.grh_used}}});
    }

    std::optional<detail::Assignment> witness;
    std::optional<std::string> candidate_reason, open_reason;
    bool needed_grh = false;
    for (const auto& part : parts) {
        std::vector<const LocusAnalysis*> fs;
        for (i64 v : part) fs.push_back(&loci.at(v));
        Json data{{"factors", part}};
        std::string outcome;
        bool part_grh = false;
        const bool has_excluded = std::any_of(fs.begin(), fs.end(), [](auto* l) { return l->excluded(); });
        if (has_excluded) {
            outcome = "blocked-excluded-factor";
            part_grh = std::none_of(fs.begin(), fs.end(), [](auto* l) { return l->excluded() && !l->grh_used; });
        } else {
            const bool all_have = std::all_of(fs.begin(), fs.end(), [](auto* l) { return !l->survivors.empty(); });
            std::optional<detail::Assignment> asg;
            if (all_have) asg = detail::best_assignment(fs);
            const bool any_open = std::any_of(fs.begin(), fs.end(), [](auto* l) { return !l->open.empty(); });
            if (asg) {
                outcome = "realizable";
                Json picks = Json::array();
                for (const auto& cand : asg->picks) picks.push_back(to_json(cand));
                data["assignment"] = picks;
                data["n"] = asg->n.str();
                if (c.scenario == ScenarioKind::weight3_lambda) {
                    if (!witness || asg->n < witness->n) witness = asg;
                } else if (!candidate_reason) {
                    candidate_reason = "candidate local data survive for factorization " + Json(part).dump();
                }
            } else if (any_open) {
                outcome = "open";
                for (auto* l : fs)
                    for (const auto& r : l->open) {
                        data["open"].push_back(r);
                        if (!open_reason) open_reason = r;
                    }
            } else {
                outcome = "blocked-prime-conflict";
                part_grh = std::any_of(fs.begin(), fs.end(), [](auto* l) { return l->grh_used; });
            }
        }
        if (outcome.rfind("blocked", 0) == 0) {
            data["grh"] = part_grh;
            needed_grh = needed_grh || part_grh;
        }
        data["outcome"] = outcome;
        cert.steps.push_back({"factorization " + Json(part).dump(), "distinct-primes", data});
    }

    if (witness) {
        const auto src = coefficient_source(*c.lambda);
        if (witness->n > std::numeric_limits<i64>::max()) throw OverflowError("witness index too large");
        const i64 n = static_cast<i64>(witness->n);
        Json local = Json::array();
        for (const auto& cand : witness->picks) {
            const auto loc = src->local(cand.p);
            local.push_back({{"p", cand.p}, {"e", cand.d - 1}, {"a_p", loc.a}, {"chi", loc.chi},
                             {"value", prime_power_coeff_big(loc.a, loc.chi, 3, cand.p, cand.d - 1).str()}});
        }
        const BigInt recomputed = src->multiplicative(n);
        Json data{{"n", n}, {"local", local}, {"recomputed", recomputed.str()}};
        if (auto d = src->direct(n)) data["expansion"] = *d;
        cert.steps.push_back({"a(" + std::to_string(n) + ") recomputed from the coefficient source", "witness", data});
        if (recomputed != alpha) throw std::logic_error("witness recomputation disagrees with the target");
        cert.verdict = {VerdictKind::witness, n, src->describe(), ""};
        return cert;
    }
    if (candidate_reason) {
        cert.verdict = {VerdictKind::inconclusive, 0, "", *candidate_reason};
        return cert;
    }
    if (open_reason) {
        cert.verdict = {VerdictKind::inconclusive, 0, "", *open_reason};
        return cert;
    }
    cert.grh_used = needed_grh;
    cert.verdict.kind = needed_grh ? VerdictKind::excluded_under_grh : VerdictKind::excluded;
    return cert;
}

inline ExclusionCertificate certify_prime_value(i64 ell, const Constraint& c) {
    const i64 q = ell < 0 ? -ell : ell;
    if (q < 3 || !is_prime(q)) throw std::invalid_argument("certify_prime_value: |target| must be an odd prime");
    return certify_value(ell, c);
}

// All n <= bound coprime to the bad primes with a(n) = alpha.
inline std::vector<i64> witness_search(i64 alpha, const Rational& lambda, i64 bound) {
    if (bound < 1) throw std::invalid_argument("witness_search: bound must be positive");
    std::vector<i64> out;
    if (alpha % 2 == 0) return out;
    const auto src = coefficient_source(lambda);
    if (const auto* eta = dynamic_cast<const EtaSource*>(src.get())) {
        const auto s = eta->series(bound);
        for (i64 n = 1; n <= bound; ++n)
            if (src->coprime(n) && s->at(n) == alpha) out.push_back(n);
        return out;
    }
    if (bound >= kPointCountLimit) throw std::invalid_argument("witness_search: bound exceeds the point-count cap");
    for (i64 n = 1; n <= bound; ++n)
        if (src->coprime(n) && src->multiplicative(n) == alpha) out.push_back(n);
    return out;
}

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> problems;
};

// Re-executes the certificate: independent checks of solver and witness steps, then a full replay.
inline VerifyResult verify_certificate(const ExclusionCertificate& cert) {
    VerifyResult r;
    auto fail = [&](std::string m) {
        r.ok = false;
        r.problems.push_back(std::move(m));
    };
    if (cert.tool_version != kToolVersion) fail("tool version " + cert.tool_version + " differs from " + kToolVersion);
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const auto& s = cert.steps[i];
        try {
            if (s.anchor == "equation") {
                const auto& sj = s.data.at("solve");
                const auto re = detail::solution_json(solve(detail::problem_from_json(sj)));
                if (re != sj) fail("step " + std::to_string(i) + ": solver rerun differs");
            } else if (s.anchor == "exponent-divisibility") {
                if (s.data.at("exponents").get<std::vector<int>>() != locus_exponents(s.data.at("alpha").get<i64>()))
                    fail("step " + std::to_string(i) + ": exponent set differs");
            } else if (s.anchor == "locus-filter" || s.anchor == "coprime-reduction") {
                const int k = cert.constraint.weight();
                for (const auto& cj : s.data.at("candidates")) {
                    if (cj.at("status").get<std::string>() != "survives") continue;
                    const i64 p = cj.at("p").get<i64>(), a = cj.at("a").get<i64>();
                    const int chi = cj.at("chi").get<int>(), d = cj.at("d").get<int>();
                    const BigInt B = BigInt(chi) * (k == 2 ? BigInt(p) : BigInt(p) * p);
                    if (!is_prime(p) || lucas_term<BigInt>(BigInt(a), B, d) != s.data.at("alpha").get<i64>() ||
                        !within_deligne(a, k, p) || a % 2 != 0)
                        fail("step " + std::to_string(i) + ": surviving candidate fails re-verification");
                }
            } else if (s.anchor == "witness") {
                const auto src = coefficient_source(*cert.constraint.lambda);
                const i64 n = s.data.at("n").get<i64>();
                if (src->multiplicative(n) != cert.target) fail("witness recomputation differs");
                if (auto d = src->direct(n); d && *d != cert.target) fail("witness expansion value differs");
            }
        } catch (const std::exception& e) {
            fail("step " + std::to_string(i) + ": " + e.what());
        }
    }
    try {
        const auto replay = certify_value(cert.target, cert.constraint);
        if (replay.steps.size() != cert.steps.size()) {
            fail("replay produced a different number of steps");
        } else {
            for (std::size_t i = 0; i < replay.steps.size(); ++i)
                if (!(replay.steps[i] == cert.steps[i])) {
                    fail("replay differs at step " + std::to_string(i));
                    break;
                }
        }
        if (!(replay.verdict == cert.verdict)) fail("replay verdict differs");
        if (replay.grh_used != cert.grh_used) fail("replay GRH flag differs");
    } catch (const std::exception& e) {
        fail(std::string("replay failed: ") + e.what());
    }
    return r;
}

}  // namespace lehmer
