#pragma once

// Command-line front end. run() parses, validates, computes and writes one
// table; tools/geoquad.cpp only forwards argv.
//
// Tables go out as CSV (header + rows), JSON (array of records keyed by the
// CSV header) or plain (cells separated by spaces, no header). Exact
// rationals are "p/q" strings in every format.

#include "geoquad/asymptotics.hpp"
#include "geoquad/continuum.hpp"
#include "geoquad/enumerate.hpp"
#include "geoquad/families.hpp"
#include "geoquad/json_io.hpp"
#include "geoquad/sampler.hpp"
#include "geoquad/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace geoquad::cli {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr const char* kThreadsEnv = "GEOQUAD_THREADS";

using Cell = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::size_t> plain_columns;  // empty: all of them

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
        rows.push_back(std::move(row));
    }
};

enum class Format { csv, json, plain };

inline std::string cell_text(const Cell& c) {
    if (c.is_null()) return "";
    if (c.is_string()) return c.get<std::string>();
    return c.dump();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

inline void write_table(const Table& t, Format f, std::ostream& out) {
    switch (f) {
        case Format::csv: {
            for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j];
            out << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_field(cell_text(row[j]));
                out << '\n';
            }
            break;
        }
        case Format::json: {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                nlohmann::ordered_json rec = nlohmann::ordered_json::object();
                for (std::size_t j = 0; j < row.size(); ++j) rec[t.columns[j]] = row[j];
                a.push_back(std::move(rec));
            }
            out << a.dump(2) << '\n';
            break;
        }
        case Format::plain: {
            std::vector<std::size_t> cols = t.plain_columns;
            if (cols.empty())
                for (std::size_t j = 0; j < t.columns.size(); ++j) cols.push_back(j);
            for (const auto& row : t.rows) {
                for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? " " : "") << cell_text(row[cols[j]]);
                out << '\n';
            }
            break;
        }
    }
}

inline Cell exact(const mpq_class& q) { return q.get_str(); }

inline int default_threads() {
    if (const char* e = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const long v = std::strtol(e, &end, 10);
        if (end == e || *end != '\0' || v < 1 || v > 1024)
            throw UsageError(std::string(kThreadsEnv) + " must be an integer in [1, 1024]");
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ---- subcommands -----------------------------------------------------------

struct SeriesArgs {
    std::string family = "U";
    int i = 1;
    int k = 2;
    int order = 10;
};

inline Table cmd_series(const SeriesArgs& a) {
    if (a.i < (a.family == "R" ? 0 : 1)) throw UsageError("--i must be at least 1 (0 allowed for R)");
    if ((a.family == "Uk" || a.family == "UkStrong") && a.k < 1) throw UsageError("--k must be at least 1");
    const auto s = series_family(parse_family(a.family), a.i, a.k, a.order);
    Table t{{"n", "coefficient"}, {}, {1}};
    for (std::size_t n = 0; n <= s.order(); ++n) t.add({static_cast<long>(n), exact(s[n])});
    return t;
}

struct CoeffsArgs {
    std::string table = "agd";
    int i_max = 10;
    int k = 2;
};

inline Table cmd_coeffs(const CoeffsArgs& a) {
    const unsigned I = a.i_max;
    if (a.table == "w2pp") {
        Table t{{"i", "w2pp"}, {}, {}};
        const auto w = w2pp_table(I);
        for (unsigned i = 1; i <= I; ++i) t.add({i, exact(w[i])});
        return t;
    }
    JetTable jets;
    std::vector<std::string> head{"i", "alpha", "gamma", "delta"};
    if (a.table == "acd") {
        jets = acd_table(I);
        head = {"i", "a", "c", "d"};
    } else if (a.table == "agd") {
        jets = agd(I);
    } else {
        if (a.k < 1) throw UsageError("--k must be at least 1");
        const KTables kt = k_tables(I, a.k);
        jets = a.table == "k" ? kt.weak : kt.strong;
    }
    Table t{head, {}, {}};
    for (unsigned i = 1; i <= I; ++i) t.add({i, exact(jets[i].a), exact(jets[i].c), exact(jets[i].d)});
    return t;
}

struct AsymArgs {
    int i = 1;
    int k = 1;
    std::string mode = "weak";
    int table_size = 0;  // 0: use i
    int n = 0;           // > 0 adds the saddle-point check for Z_i at g^n
};

inline Table cmd_asym(const AsymArgs& a) {
    const unsigned size = a.table_size ? a.table_size : a.i;
    if (static_cast<unsigned>(a.i) > size) throw UsageError("--table-size must be at least --i");
    const AverageLaws L = average_laws(a.i, a.k, a.mode == "weak" ? LawMode::weak : LawMode::strong, size);
    Table t{{"quantity", "exact", "value", "limit"}, {}, {}};
    auto row = [&](const char* name, const std::optional<mpq_class>& q, double limit) {
        t.add({name, q ? exact(*q) : Cell(nullptr), q ? Cell(q->get_d()) : Cell(nullptr), limit});
    };
    row("per_origin", L.per_origin.exact, L.per_origin.limit);
    row("per_pair", std::nullopt, L.per_pair);
    row("vertices_at_distance", std::nullopt, L.vertices_at_distance);
    row("area_product", L.area_product.exact, L.area_product.limit);
    row("contacts", L.contacts.exact, L.contacts.limit);
    row("weak_area_theta", std::nullopt, L.weak_area_theta);
    if (a.n > 0) {
        const auto z = series_Z(a.i, a.n);
        const mpq_class D = acd(a.i).d;
        t.add({"saddle_ratio", exact(z[a.n]), saddle_ratio(z[a.n], a.n, D), 1.0});
    }
    return t;
}

struct ScalingArgs {
    std::string curve = "phi";
    double r_min = 0.1, r_max = 2, step = 0.1, tol = 1e-8;
    int threads = 0;  // 0: default
};

inline Table cmd_scaling(const ScalingArgs& a) {
    if (a.r_max < a.r_min) throw UsageError("--r-max must not be below --r-min");
    const ScalingCurve c = tabulate(parse_curve(a.curve), a.r_min, a.r_max, a.step, a.tol, a.threads);
    Table t{{"r", "value", "err"}, {}, {}};
    for (std::size_t j = 0; j < c.r.size(); ++j) t.add({c.r[j], c.value[j], c.error[j]});
    return t;
}

/// "g,v" plus an optional index range token "a-b" or "a" in the same list.
inline void parse_observables(const std::string& list, ExperimentConfig& c, bool range_given) {
    c.observables.clear();
    std::stringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw UsageError("empty entry in --observables");
        if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
            if (range_given) throw UsageError("index range given twice");
            int lo = 0, hi = 0;
            char dash = 0;
            std::istringstream r(tok);
            if (!(r >> lo)) throw UsageError("bad index range: " + tok);
            hi = lo;
            if (r >> dash && (dash != '-' || !(r >> hi))) throw UsageError("bad index range: " + tok);
            c.i_min = lo;
            c.i_max = hi;
            range_given = true;
        } else {
            c.observables.push_back(tok);
        }
    }
}

struct SampleArgs {
    int n = 0;
    long samples = 1000;
    std::uint64_t seed = 1;
    std::string observables = "g";
    std::string i_range;
    bool exhaustive = false;
    int threads = 0;
};

inline Table cmd_sample(const SampleArgs& a) {
    ExperimentConfig c;
    c.n = a.n;
    c.samples = a.samples;
    c.seed = a.seed;
    c.exhaustive = a.exhaustive;
    c.threads = a.threads;
    if (!a.i_range.empty()) {
        if (a.i_range.find(',') != std::string::npos || !std::isdigit(static_cast<unsigned char>(a.i_range[0])))
            throw UsageError("--i-range takes a or a-b");
        parse_observables(a.i_range, c, false);
    }
    const int lo = c.i_min, hi = c.i_max;
    parse_observables(a.observables, c, !a.i_range.empty());
    if (!a.i_range.empty()) {
        c.i_min = lo;
        c.i_max = hi;
    }
    try {
        validate(c);
    } catch (const ConfigInvalid& e) {
        throw UsageError(e.what());
    }
    Table t{{"observable", "i", "mean", "stderr", "weighted_mean", "weighted_stderr", "samples"}, {}, {}};
    for (const auto& s : run_experiment(c))
        t.add({s.observable, s.index, s.mean(), s.stderr_(), s.weighted_mean(), s.weighted_stderr(), s.count});
    return t;
}

struct VerifyArgs {
    int n_max = 3;
    int i_max = 3;
};

inline Table cmd_verify(const VerifyArgs& a, bool& all_ok) {
    Table t{{"check", "status", "detail"}, {}, {}};
    all_ok = true;
    for (const auto& r : run_oracle_suite(a.n_max, a.i_max)) {
        all_ok = all_ok && r.ok;
        t.add({r.name, r.ok ? "ok" : "FAIL", r.detail});
    }
    return t;
}

struct EnumerateArgs {
    std::string emit = "trees";
    int n = 1;
    int i = 1;
    std::string map_file;
};

inline Table cmd_enumerate(const EnumerateArgs& a) {
    const bool from_file = a.emit == "profile" || a.emit == "geodesics" || a.emit == "tree";
    if (from_file && a.map_file.empty()) throw UsageError("--emit " + a.emit + " needs --map-file");
    if (!from_file && !a.map_file.empty()) throw UsageError("--emit " + a.emit + " does not read --map-file");
    if (!from_file && a.n > kDefaultTreeCap) throw UsageError("--n above the enumeration cap");
    if (a.emit == "trees") {
        Table t{{"tree"}, {}, {}};
        for_each_well_labeled_tree(a.n, [&](const WellLabeledTree& w) { t.add({w.serialize()}); });
        return t;
    }
    if (a.emit == "maps") {
        Table t{{"map"}, {}, {}};
        for_each_rooted_quadrangulation(a.n, [&](const Quadrangulation& q) { t.add({map_to_json(q).dump()}); });
        return t;
    }
    const Quadrangulation q = read_map_file(a.map_file);
    if (a.emit == "tree") {
        if (!q.root) throw UsageError("--emit tree needs a rooted map");
        return Table{{"tree"}, {{quad_to_tree(q).serialize()}}, {}};
    }
    if (!q.root && !q.origin) throw UsageError("map needs a root or an origin");
    const int o = q.origin_vertex();
    const DistanceLabeling d = bfs_labels(q.map, o);
    if (a.emit == "profile") {
        const auto g = geodesic_counts(q.map, d);
        const int far = *std::max_element(d.label.begin(), d.label.end());
        std::vector<long> verts(far + 1, 0);
        std::vector<mpz_class> geo(far + 1, 0);
        for (int v = 0; v < q.map.vertex_count(); ++v) {
            ++verts[d.label[v]];
            geo[d.label[v]] += g[v];
        }
        Table t{{"distance", "vertices", "geodesics"}, {}, {}};
        for (int j = 0; j <= far; ++j) t.add({j, verts[j], geo[j].get_str()});
        return t;
    }
    Table t{{"target", "path"}, {}, {}};
    for (int v = 0; v < q.map.vertex_count(); ++v) {
        if (d.label[v] != a.i) continue;
        for (const auto& p : enumerate_geodesics(q.map, d, v)) {
            std::string s;
            for (int h : p.half_edges) s += (s.empty() ? "" : " ") + std::to_string(h);
            t.add({v, s});
        }
    }
    return t;
}

// ---- entry point -----------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geodesics in random planar quadrangulations: exact series, asymptotic laws, scaling curves, "
                 "sampling and self-checks.",
                 "geoquad"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string out_path, format;
    auto common = [&](CLI::App* s) {
        s->add_option("--out", out_path, "Write to this file instead of stdout");
        s->add_option("--format", format, "csv | json | plain (default depends on the subcommand)")
            ->check(CLI::IsMember({"csv", "json", "plain"}));
    };
    const int hw_threads = [&] {
        try {
            return default_threads();
        } catch (const UsageError& e) {
            err << "error: " << e.what() << '\n';
            return -1;
        }
    }();
    if (hw_threads < 0) return kExitUsage;
    const std::string threads_help = "Worker threads (default: $" + std::string(kThreadsEnv) + " or hardware)";

    SeriesArgs sa;
    auto* series = app.add_subcommand("series", "Coefficients of one generating function, exact");
    series->add_option("--family", sa.family, "R | Z | U | Uk | UkStrong | Zpp | U2pp | TwoPoint")
        ->check(CLI::IsMember({"R", "Z", "U", "Uk", "UkStrong", "Zpp", "U2pp", "TwoPoint"}))
        ->capture_default_str();
    series->add_option("--i", sa.i, "Geodesic length")->check(CLI::Range(0, 200))->capture_default_str();
    series->add_option("--k", sa.k, "Tuple size for Uk, UkStrong")->check(CLI::Range(1, 16))->capture_default_str();
    series->add_option("--order", sa.order, "Last power of g")->check(CLI::Range(0, 2000))->capture_default_str();
    common(series);

    CoeffsArgs ca;
    auto* coeffs = app.add_subcommand("coeffs", "Exact critical expansion tables, rows i = 1..I");
    coeffs->add_option("--table", ca.table, "acd | agd | k | tilde | w2pp")
        ->check(CLI::IsMember({"acd", "agd", "k", "tilde", "w2pp"}))
        ->capture_default_str();
    coeffs->add_option("--i-max", ca.i_max, "Last row")->check(CLI::Range(1, 400))->capture_default_str();
    coeffs->add_option("--k", ca.k, "Tuple size for k and tilde")->check(CLI::Range(1, 16))->capture_default_str();
    common(coeffs);

    AsymArgs aa;
    auto* asym = app.add_subcommand("asym", "Average laws at one length i, exact next to the large-i form");
    asym->add_option("--i", aa.i, "Geodesic length")->check(CLI::Range(1, 400))->capture_default_str();
    asym->add_option("--k", aa.k, "Tuple size")->check(CLI::Range(1, 16))->capture_default_str();
    asym->add_option("--mode", aa.mode, "weak | strong")
        ->check(CLI::IsMember({"weak", "strong"}))
        ->capture_default_str();
    asym->add_option("--table-size", aa.table_size, "Rows computed (default: i)")->check(CLI::Range(0, 400));
    asym->add_option("--n", aa.n, "Also compare [g^n] Z_i with its saddle-point estimate")
        ->check(CLI::Range(0, 2000));
    common(asym);

    ScalingArgs sc;
    auto* scaling = app.add_subcommand("scaling", "Continuum curve on a grid of r");
    scaling->add_option("--curve", sc.curve, "phi | rho | sigma | lambda | ratio | theta")
        ->check(CLI::IsMember({"phi", "rho", "sigma", "lambda", "ratio", "theta"}))
        ->capture_default_str();
    scaling->add_option("--r-min", sc.r_min, "First r")->check(CLI::Range(0.0, 1e3))->capture_default_str();
    scaling->add_option("--r-max", sc.r_max, "Last r")->check(CLI::Range(0.0, 1e3))->capture_default_str();
    scaling->add_option("--step", sc.step, "Grid step")->check(CLI::PositiveNumber)->capture_default_str();
    scaling->add_option("--tol", sc.tol, "Quadrature tolerance")->check(CLI::Range(1e-14, 1e-1))->capture_default_str();
    scaling->add_option("--threads", sc.threads, threads_help)->check(CLI::Range(1, 1024));
    common(scaling);

    SampleArgs sp;
    auto* sample = app.add_subcommand("sample", "Monte Carlo averages over uniform rooted quadrangulations");
    sample->add_option("--n", sp.n, "Faces")->required()->check(CLI::Range(1, 10000000));
    sample->add_option("--samples", sp.samples, "Maps drawn")->check(CLI::Range(1L, 1000000000L))->capture_default_str();
    sample->add_option("--seed", sp.seed, "RNG seed")->capture_default_str();
    sample->add_option("--observables", sp.observables,
                       "Comma list of g (geodesics), v (vertices), p (predecessor law), optionally with an index "
                       "range such as 1-4")
        ->capture_default_str();
    sample->add_option("--i-range", sp.i_range, "Index range a-b (default 1)");
    sample->add_flag("--exhaustive", sp.exhaustive, "Enumerate every map instead of sampling (small n only)");
    sample->add_option("--threads", sp.threads, threads_help)->check(CLI::Range(1, 1024));
    common(sample);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the oracle suite; exit 1 on any failure");
    verify->add_option("--n-max", va.n_max, "Faces up to")->check(CLI::Range(0, 6))->capture_default_str();
    verify->add_option("--i-max", va.i_max, "Geodesic lengths up to")->check(CLI::Range(1, 6))->capture_default_str();
    common(verify);

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "List small objects, or inspect a map given as JSON");
    enumerate->add_option("--emit", ea.emit, "trees | maps (by --n); profile | geodesics | tree (from --map-file)")
        ->check(CLI::IsMember({"trees", "maps", "profile", "geodesics", "tree"}))
        ->capture_default_str();
    enumerate->add_option("--n", ea.n, "Edges of the trees / faces of the maps")->check(CLI::Range(0, 100))->capture_default_str();
    enumerate->add_option("--i", ea.i, "Distance for --emit geodesics")->check(CLI::Range(0, 1000000))->capture_default_str();
    enumerate->add_option("--map-file", ea.map_file, "JSON map {half_edges, alpha, sigma, root, origin}");
    common(enumerate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (sc.threads == 0) sc.threads = hw_threads;
    if (sp.threads == 0) sp.threads = hw_threads;

    Format f = Format::csv;
    const bool line_output = series->parsed() || enumerate->parsed();
    if (format == "json") f = Format::json;
    else if (format == "plain" || (format.empty() && line_output)) f = Format::plain;

    Table t;
    bool ok = true;
    try {
        if (series->parsed()) t = cmd_series(sa);
        else if (coeffs->parsed()) t = cmd_coeffs(ca);
        else if (asym->parsed()) t = cmd_asym(aa);
        else if (scaling->parsed()) t = cmd_scaling(sc);
        else if (sample->parsed()) t = cmd_sample(sp);
        else if (verify->parsed()) t = cmd_verify(va, ok);
        else t = cmd_enumerate(ea);
    } catch (const std::invalid_argument& e) {
        // bad flags, map files and ranges the library itself rejects
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IndexBeyondTable& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: computation failed: " << e.what() << '\n';
        return kExitComputation;
    }

    if (out_path.empty()) {
        write_table(t, f, out);
    } else {
        std::ofstream file(out_path);
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return kExitUsage;
        }
        write_table(t, f, file);
    }
    if (!ok) {
        err << "verify: failures reported above\n";
        return kExitComputation;
    }
    return 0;
}

}  // namespace geoquad::cli
