#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lehmer.hpp"

namespace lehmer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitTableMismatch = 3;
inline constexpr int kExitInput = 64;

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline i64 parse_int(const std::string& s, const char* what) {
    i64 v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    if (!s.empty() && s[0] == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e) throw InputError(std::string(what) + ": expected an integer, got '" + s + "'");
    return v;
}

inline int parse_sign(const std::string& s) {
    if (s == "+" || s == "+1" || s == "plus") return 1;
    if (s == "-" || s == "-1" || s == "minus") return -1;
    throw InputError("sign must be + or -, got '" + s + "'");
}

inline void need(const std::vector<std::string>& a, std::size_t n, const char* usage) {
    if (a.size() != n) throw InputError(std::string("usage: ") + usage);
}

struct Options {
    std::string format;
    unsigned jobs = 1;
};

inline std::string format_or(const Options& o, const char* fallback) {
    const std::string f = o.format.empty() ? fallback : o.format;
    if (f != "csv" && f != "json" && f != "text") throw InputError("format must be csv, json or text");
    return f;
}

inline std::string pairs_text(const std::vector<IntPair>& v) {
    std::string s;
    for (auto [x, y] : v) s += (s.empty() ? "" : " ") + ("(" + std::to_string(x) + "," + std::to_string(y) + ")");
    return s.empty() ? "(none)" : s;
}

inline int cmd_lucas(const Options& o, const std::vector<std::string>& a, std::ostream& out) {
    need(a, 3, "lucas A B n");
    const auto pair = make_pair(parse_int(a[0], "A"), parse_int(a[1], "B"));
    const i64 n = parse_int(a[2], "n");
    if (n < 1 || n > 10000) throw InputError("n must lie in [1, 10000]");
    const auto seq = terms(pair, static_cast<int>(n));
    const auto recs = defect_scan(pair, static_cast<int>(std::min<i64>(n, 64)));
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        Json t = Json::array(), d = Json::array();
        for (int i = 1; i <= seq.size(); ++i) t.push_back(seq.u(i).str());
        for (const auto& r : recs)
            if (r.classification != DefectKind::none)
                d.push_back({{"n", r.index}, {"value", r.value.str()}, {"classification", to_string(r.classification)},
                             {"row", r.row}});
        out << Json{{"A", pair.A}, {"B", pair.B}, {"terms", t}, {"defects", d}}.dump(2) << '\n';
    } else if (fmt == "csv") {
        out << "n,u_n,defect,row\n";
        for (int i = 1; i <= seq.size(); ++i) {
            std::string kind = "none";
            int row = 0;
            for (const auto& r : recs)
                if (r.index == i) {
                    kind = to_string(r.classification);
                    row = r.row;
                }
            out << i << ',' << seq.u(i).str() << ',' << kind << ',' << row << '\n';
        }
    } else {
        for (int i = 1; i <= seq.size(); ++i) out << "u_" << i << " = " << seq.u(i).str() << '\n';
        for (const auto& r : recs)
            if (r.classification != DefectKind::none)
                out << "defective u_" << r.index << " = " << r.value.str() << " (" << to_string(r.classification)
                    << ", row " << r.row << ")\n";
    }
    return kExitOk;
}

inline int cmd_eta(const Options& o, const std::vector<std::string>& a, std::ostream& out) {
    need(a, 2, "eta \"<spec>\" N");
    const auto prod = parse_eta_product(a[0]);
    const i64 N = parse_int(a[1], "N");
    const auto s = eta_product_series(prod, N);
    const auto fmt = format_or(o, "csv");
    if (fmt == "json") {
        Json c = Json::array();
        for (i64 n = 1; n <= N; ++n) c.push_back(s.at(n));
        out << Json{{"spec", to_string(prod)}, {"weight", prod.weight()}, {"bad_primes", s.spec.bad_primes}, {"a", c}}.dump(2)
            << '\n';
    } else {
        if (fmt == "csv") out << "n,a(n)\n";
        for (i64 n = 1; n <= N; ++n) out << n << (fmt == "csv" ? "," : " ") << s.at(n) << '\n';
    }
    return kExitOk;
}

inline int cmd_ec(const Options& o, const std::vector<std::string>& a, std::ostream& out) {
    const auto fmt = format_or(o, "csv");
    std::optional<LambdaCurve> lc;
    CurveQ curve;
    i64 pmax = 0;
    if (a.size() == 2 && a[0].rfind("lambda=", 0) == 0) {
        lc = integral_model(parse_rational(a[0].substr(7)));
        curve = lc->model;
        pmax = parse_int(a[1], "pmax");
    } else if (a.size() == 4) {
        curve = {parse_int(a[0], "a2"), parse_int(a[1], "a4"), parse_int(a[2], "a6"), {}};
        curve.validate();
        pmax = parse_int(a[3], "pmax");
    } else {
        throw InputError("usage: ec lambda=<r> pmax | ec a2 a4 a6 pmax");
    }
    if (pmax < 3 || pmax >= kPointCountLimit) throw InputError("pmax must lie in [3, 100000)");
    const auto bad = lc ? lc->bad_primes : curve.bad_primes();
    Json rows = Json::array();
    if (fmt == "csv") out << (lc ? "p,a_E(p),a_lambda(p)\n" : "p,a_E(p)\n");
    if (fmt == "text") out << "curve: " << to_string(curve) << '\n';
    for (i64 p : primes_up_to(pmax)) {
        if (p == 2 || std::binary_search(bad.begin(), bad.end(), p)) continue;
        const i64 ae = a_E(curve, p);
        std::optional<i64> al;
        if (lc) al = a_lambda(*lc, p);
        if (fmt == "json") {
            Json r{{"p", p}, {"a_E", ae}};
            if (al) r["a_lambda"] = *al;
            rows.push_back(r);
        } else if (fmt == "csv") {
            out << p << ',' << ae;
            if (al) out << ',' << *al;
            out << '\n';
        } else {
            out << "p = " << p << ": a_E = " << ae;
            if (al) out << ", a_lambda = " << *al;
            out << '\n';
        }
    }
    if (fmt == "json") out << Json{{"curve", to_string(curve)}, {"bad_primes", bad}, {"rows", rows}}.dump(2) << '\n';
    return kExitOk;
}

inline int cmd_solve(const Options& o, const std::vector<std::string>& a, std::ostream& out, i64 radius) {
    if (a.empty()) throw InputError("usage: solve {f 2m D | c2 +- l | c4 +- l | w2q l}");
    SolutionSet s;
    if (a[0] == "f") {
        need(a, 3, "solve f 2m D");
        s = solve_f(static_cast<int>(parse_int(a[1], "2m")), parse_int(a[2], "D"), radius > 0 ? radius : kDefaultThueRadius);
    } else if (a[0] == "c2") {
        need(a, 3, "solve c2 +- l");
        s = solve_c2(parse_sign(a[1]), parse_int(a[2], "l"));
    } else if (a[0] == "c4") {
        need(a, 3, "solve c4 +- l");
        s = solve_c4(parse_sign(a[1]), parse_int(a[2], "l"), radius > 0 ? radius : kDefaultQuarticRadius);
    } else if (a[0] == "w2q") {
        need(a, 2, "solve w2q l");
        s = solve_w2_quartic(parse_int(a[1], "l"), radius > 0 ? radius : kDefaultW2Radius);
    } else {
        throw InputError("unknown equation '" + a[0] + "'");
    }
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        out << detail::solution_json(s).dump(2) << '\n';
    } else if (fmt == "csv") {
        out << "x,y\n";
        for (auto [x, y] : s.solutions) out << x << ',' << y << '\n';
    } else {
        out << s.problem.describe() << '\n' << pairs_text(s.solutions) << '\n' << "completeness: " << to_string(s.completeness);
        if (s.table_id) out << " (table " << s.table_id << ")";
        out << '\n';
    }
    return kExitOk;
}

struct CertifyArgs {
    int weight = 0;
    int torsion = 0;
    std::string lambda;
    bool grh = false;
    std::string out_file;
    Radii radii;
};

inline Constraint build_constraint(const CertifyArgs& c) {
    Constraint k;
    if (c.weight == 2) {
        if (!c.lambda.empty()) throw InputError("--lambda applies to weight 3");
        if (c.torsion == 0) throw InputError("weight 2 needs --torsion 3 or 5");
        k = Constraint::weight2(c.torsion, c.grh);
    } else if (c.weight == 3) {
        if (c.torsion != 0) throw InputError("--torsion applies to weight 2");
        if (c.lambda.empty() || c.lambda == "all") {
            k = Constraint::all_lambda(c.grh);
        } else {
            k = Constraint::for_lambda(parse_rational(c.lambda), c.grh);
        }
    } else {
        throw InputError("--weight must be 2 or 3");
    }
    k.radii = c.radii;
    k.validate();
    return k;
}

inline void print_certificate_text(const ExclusionCertificate& c, std::ostream& out) {
    out << "target: " << c.target << '\n';
    out << "constraint: " << to_json(c.constraint).dump() << '\n';
    out << "steps: " << c.steps.size() << '\n';
    for (const auto& s : c.steps) out << "  [" << s.anchor << "] " << s.claim << '\n';
    out << "verdict: " << to_string(c.verdict.kind);
    if (c.verdict.kind == VerdictKind::witness) out << " n=" << c.verdict.n << " (" << c.verdict.source << ")";
    if (c.verdict.kind == VerdictKind::inconclusive) out << " (" << c.verdict.reason << ")";
    out << '\n' << "grh_used: " << (c.grh_used ? "true" : "false") << '\n';
}

inline int cmd_certify(const Options& o, const std::vector<std::string>& a, const CertifyArgs& args, std::ostream& out) {
    need(a, 1, "certify alpha --weight {2|3} [--torsion {3|5}] [--lambda r|all] [--grh]");
    const i64 alpha = parse_int(a[0], "alpha");
    const auto cert = certify_value(alpha, build_constraint(args));
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        out << to_json(cert).dump(2) << '\n';
    } else if (fmt == "csv") {
        out << "target,verdict,n,grh_used\n"
            << cert.target << ',' << to_string(cert.verdict.kind) << ',' << cert.verdict.n << ','
            << (cert.grh_used ? "true" : "false") << '\n';
    } else {
        print_certificate_text(cert, out);
    }
    if (!args.out_file.empty()) {
        std::ofstream f(args.out_file);
        if (!f) throw InputError("cannot write " + args.out_file);
        f << to_json(cert).dump(2) << '\n';
    }
    return cert.verdict.kind == VerdictKind::inconclusive ? kExitInconclusive : kExitOk;
}

inline int cmd_tables(const Options& o, const std::vector<std::string>& a, const std::string& dir_opt, std::ostream& out) {
    if (a.empty()) throw InputError("usage: tables verify | tables export DIR");
    const std::filesystem::path dir = dir_opt.empty() ? resource_dir() : std::filesystem::path(dir_opt);
    if (a[0] == "export") {
        need(a, 2, "tables export DIR");
        export_tables(a[1]);
        out << "exported tables 1-8 to " << a[1] << '\n';
        return kExitOk;
    }
    if (a[0] != "verify") throw InputError("unknown tables action '" + a[0] + "'");
    need(a, 1, "tables verify");
    const auto rep = verify_tables(dir);
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        Json m = Json::array();
        for (const auto& x : rep.mismatches) m.push_back({{"table", x.table}, {"key", x.key}, {"detail", x.detail}});
        out << Json{{"resources", dir.string()}, {"rows_checked", rep.rows_checked}, {"mismatches", m}}.dump(2) << '\n';
    } else {
        if (fmt == "csv") out << "table,key,detail\n";
        for (const auto& x : rep.mismatches)
            if (fmt == "csv")
                out << x.table << ",\"" << x.key << "\"," << x.detail << '\n';
            else
                out << "table " << x.table << " row " << x.key << ": " << x.detail << '\n';
        if (fmt == "text")
            out << rep.rows_checked << " rows checked in " << dir.string() << ", " << rep.mismatches.size() << " mismatches\n";
    }
    return rep.ok() ? kExitOk : kExitTableMismatch;
}

inline int cmd_reproduce(const Options& o, const std::vector<std::string>& a, bool grh, i64 bound, std::ostream& out) {
    need(a, 1, "reproduce {1.1-1|1.1-2|1.2-λ1|1.2-λ8|1.2-λ-4|1.2-λ-64|1.3} [--grh]");
    const auto rep = reproduce_theorem(a[0], grh, o.jobs, bound);
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        out << to_json(rep).dump(2) << '\n';
    } else if (fmt == "csv") {
        out << "list,lambda,value,verdict,status\n";
        for (const auto& e : rep.entries)
            out << e.list << ',' << e.lambda << ',' << e.value << ',' << to_string(e.verdict.kind) << ','
                << to_string(e.status) << '\n';
    } else {
        out << "theorem " << rep.id << (grh ? " (with GRH list)" : "") << '\n';
        for (const auto& e : rep.entries) {
            out << "  " << e.list << " lambda=" << e.lambda << " value=" << e.value << ": " << to_string(e.status) << " ("
                << to_string(e.verdict.kind);
            if (e.verdict.kind == VerdictKind::witness) out << " n=" << e.verdict.n;
            if (e.verdict.kind == VerdictKind::inconclusive) out << ": " << e.verdict.reason;
            out << ")\n";
        }
        for (const auto& m : rep.remarks) {
            out << "  remark lambda=" << m.lambda << " a(" << m.n << ")=" << m.value << ": "
                << (m.confirmed ? "confirmed" : "not confirmed") << " (positions " << Json(m.positions).dump() << ", "
                << to_string(m.verdict.kind) << ")\n";
        }
        out << "summary: " << rep.count(EntryStatus::reproduced) << " reproduced, "
            << rep.count(EntryStatus::not_reproduced) << " not reproduced, " << rep.count(EntryStatus::inconclusive)
            << " inconclusive, " << rep.remarks_unconfirmed() << " remarks unconfirmed\n";
    }
    return rep.exit_code();
}

inline int cmd_verify(const Options& o, const std::vector<std::string>& a, std::ostream& out) {
    need(a, 1, "verify-certificate FILE");
    std::ifstream in(a[0]);
    if (!in) throw InputError("cannot read " + a[0]);
    ExclusionCertificate cert;
    try {
        cert = certificate_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    }
    const auto res = verify_certificate(cert);
    const auto fmt = format_or(o, "text");
    if (fmt == "json") {
        out << Json{{"ok", res.ok}, {"problems", res.problems}}.dump(2) << '\n';
    } else {
        for (const auto& p : res.problems) out << "problem: " << p << '\n';
        out << (res.ok ? "certificate verified" : "certificate rejected") << '\n';
    }
    return res.ok ? kExitOk : kExitFailure;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lucas-sequence coefficient certifier"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "output format: csv, json or text");
    app.add_option("--jobs", opt.jobs, "worker threads for reproduce")->check(CLI::Range(1u, 256u));

    std::vector<std::string> args;
    auto* lucas = app.add_subcommand("lucas", "Lucas terms and defect scan");
    lucas->add_option("args", args)->required();
    auto* eta = app.add_subcommand("eta", "eta-product q-expansion");
    eta->add_option("args", args)->required();
    auto* ec = app.add_subcommand("ec", "point counts a_E(p)");
    ec->add_option("args", args)->required();

    i64 radius = 0;
    auto* solve = app.add_subcommand("solve", "Thue and quartic solution sets");
    solve->add_option("args", args)->required();
    solve->add_option("--radius", radius, "search radius override");

    CertifyArgs cargs;
    auto* certify = app.add_subcommand("certify", "certificate for one target value");
    certify->add_option("args", args)->required();
    certify->add_option("--weight", cargs.weight)->required();
    certify->add_option("--torsion", cargs.torsion);
    certify->add_option("--lambda", cargs.lambda);
    certify->add_flag("--grh", cargs.grh);
    certify->add_option("--out", cargs.out_file, "also write the JSON certificate here");
    certify->add_option("--thue-radius", cargs.radii.thue);
    certify->add_option("--quartic-radius", cargs.radii.quartic);
    certify->add_option("--w2q-radius", cargs.radii.w2q);

    std::string resources;
    auto* tables = app.add_subcommand("tables", "verify or export the embedded tables");
    tables->add_option("args", args)->required();
    tables->add_option("--resources", resources, "resource directory (default: $LEHMER_RESOURCE_DIR)");

    bool grh = false;
    i64 bound = kDefaultCoefficientBound;
    auto* reproduce = app.add_subcommand("reproduce", "replay a theorem's value lists");
    reproduce->add_option("args", args)->required();
    reproduce->add_flag("--grh", grh);
    reproduce->add_option("--bound", bound, "coefficient bound for witness scans");

    auto* verify = app.add_subcommand("verify-certificate", "replay a JSON certificate");
    verify->add_option("args", args)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    try {
        if (*lucas) return cmd_lucas(opt, args, out);
        if (*eta) return cmd_eta(opt, args, out);
        if (*ec) return cmd_ec(opt, args, out);
        if (*solve) return cmd_solve(opt, args, out, radius);
        if (*certify) return cmd_certify(opt, args, cargs, out);
        if (*tables) return cmd_tables(opt, args, resources, out);
        if (*reproduce) return cmd_reproduce(opt, args, grh, bound, out);
        if (*verify) return cmd_verify(opt, args, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInput;
}

}  // namespace lehmer::cli
