#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "loggamma/env.hpp"
#include "loggamma/error.hpp"
#include "loggamma/experiments.hpp"
#include "loggamma/grsk.hpp"
#include "loggamma/hash.hpp"
#include "loggamma/polymer.hpp"
#include "loggamma/report.hpp"
#include "loggamma/scaling.hpp"
#include "loggamma/sheetscape.hpp"

using namespace loggamma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
    double theta = 1.0;
    std::uint64_t seed = 0;
    std::int64_t n = 4;
    std::int64_t N = 0;  // 0: command default
    int k = 0;           // 0: command default
    double x = 0, y = 0, s = 0, t = 1, r = 0.5;
    int l = 0, m = 0;
    std::size_t count = 100;
    std::int64_t cols = 0, rows = 0;
    std::string identity, kind, config, out, env_path;
    std::string format = "json";
    std::string method = "auto";
    double a1 = 1, a2 = 1, a3 = 0, a4 = 0;
    double beta = 1.0;
    bool ensemble = false;
};

// Thrown for argument combinations that CLI11 cannot reject on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t as_index(double v, const char* name) {
    if (v != std::floor(v)) throw UsageError(std::string("--") + name + " must be an integer here");
    return static_cast<std::int64_t>(v);
}

LogGrid environment_for(const Flags& f, const Window& need) {
    if (!f.env_path.empty()) {
        Environment e = load_environment(f.env_path);
        return e.grid();
    }
    return sample_environment(ThetaParam(f.theta), Window::rect(need.col_max, need.row_max), f.seed).grid();
}

json resolved(const std::string& command, const Flags& f) {
    json c{{"command", command}, {"theta", f.theta}, {"seed", f.seed}};
    if (!f.env_path.empty()) c["env"] = f.env_path;
    return c;
}

void emit(const Flags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw UsageError("cannot open output file " + f.out);
    os << text;
}

std::string wrap(json config, json result) {
    json j;
    j["version"] = version_string();
    j["config_hash"] = config_hash(config);
    j["seed"] = config.value("seed", std::uint64_t{0});
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j.dump(2) + "\n";
}

int run_verify(Flags f) {
    json cfg = resolved("verify", f);
    cfg["identity"] = f.identity;
    const ThetaConstants c = constants(f.theta);
    const std::string& id = f.identity;
    IdentityReport rep;

    if (id == "greene") {
        const int k = f.k ? f.k : 2;
        const std::int64_t cols = f.N ? f.N : f.n + 2;
        if (k > cols) throw UsageError("greene needs k <= N");
        std::vector<std::int64_t> u, v;
        for (int i = 1; i <= k; ++i) {
            u.push_back(i);
            v.push_back(cols - k + i);
        }
        cfg.update(json{{"n", f.n}, {"N", cols}, {"k", k}});
        LogGrid env = environment_for(f, Window::rect(cols, f.n));
        rep = verify_greene(env, f.n, u, v);
    } else if (id == "product") {
        const int l = f.k ? f.k : 2;
        const std::int64_t cols = f.N ? f.N : f.n + 2;
        const bool brute = f.method == "brute" || (f.method == "auto" && l <= 3);
        cfg.update(json{{"n", f.n}, {"N", cols}, {"k", l}, {"method", brute ? "brute" : "determinant"}});
        LogGrid env = environment_for(f, Window::rect(cols, f.n));
        CurveFamily wf = build_curves(env, f.n, l, cols);
        rep = verify_product(env, f.n, wf, l, cols, brute);
    } else if (id == "key1") {
        const int k = f.k ? f.k : 1;
        const std::int64_t x = as_index(f.x, "x"), y = as_index(f.y, "y");
        cfg.update(json{{"n", f.n}, {"k", k}, {"x", x}, {"y", y}});
        LogGrid env = environment_for(f, Window::rect(std::max<std::int64_t>(y, 1), f.n));
        rep = verify_key1(env, f.n, x, y, k).combined();
    } else if (id == "bisection") {
        const int k = f.k ? f.k : 1;
        const int l = f.l ? f.l : k + 1, m = f.m ? f.m : 1;
        const std::int64_t x = as_index(f.x, "x"), y = as_index(f.y, "y");
        const std::int64_t cols = std::max<std::int64_t>(f.N ? f.N : y, y);
        cfg.update(json{{"n", f.n}, {"N", cols}, {"k", k}, {"l", l}, {"m", m}, {"x", x}, {"y", y}});
        LogGrid env = environment_for(f, Window::rect(cols, f.n));
        CurveFamily wf = build_curves(env, f.n, static_cast<int>(f.n), cols);
        rep = verify_bisection(wf, x, l, y, m, k);
    } else if (id == "monotonicity" || id == "quadrangle") {
        const std::int64_t cols = f.N ? f.N : 2 * f.n;
        cfg.update(json{{"n", f.n}, {"N", cols}, {"count", f.count}});
        LogGrid env = environment_for(f, Window::rect(cols, f.n));
        SampleSpec spec{f.count, f.seed};
        if (id == "quadrangle") {
            rep = verify_quadrangle(env, f.n, cols, spec);
        } else {
            CurveFamily wf = build_curves(env, f.n, static_cast<int>(f.n), cols);
            rep = verify_monotonicity(wf, spec);
        }
    } else if (id == "affine") {
        const std::int64_t cols = f.N ? f.N : 2 * f.n;
        const int l = f.l ? f.l : static_cast<int>(f.n), m = f.m ? f.m : 1;
        cfg.update(json{{"n", f.n}, {"N", cols}, {"a1", f.a1}, {"a2", f.a2}, {"a3", f.a3}, {"a4", f.a4}, {"x", f.x},
                        {"y", f.y}, {"l", l}, {"m", m}, {"beta", f.beta}, {"k", f.k}});
        LogGrid env = environment_for(f, Window::rect(cols, f.n));
        CurveFamily wf = build_curves(env, f.n, static_cast<int>(f.n), cols);
        AffineQuery q{f.x, l, f.y, m, f.beta, f.k ? f.k : -1};
        rep = verify_affine(wf, AffineParams{f.a1, f.a2, f.a3, f.a4, {}}, q);
    } else if (id == "composition") {
        const std::int64_t N = f.N ? f.N : 8;
        LandscapeQuery q{N, f.x, f.s, f.y, f.t};
        cfg.update(json{{"N", N}, {"x", f.x}, {"s", f.s}, {"y", f.y}, {"t", f.t}, {"r", f.r}});
        LogGrid env = environment_for(f, required_window(landscape_index(c, q)));
        rep = verify_composition(env, c, q, f.r);
    } else if (id == "sandwich" || id == "sheet_quadrangle" || id == "component_monotonicity" || id == "normalization") {
        const std::int64_t N = f.N ? f.N : 8;
        const int k = f.k ? f.k : 1;
        SheetSampleSpec spec{f.count, f.seed, k, 8, 8};
        cfg.update(json{{"N", N}, {"k", k}, {"count", f.count}, {"x_span", spec.x_span}, {"y_span", spec.y_span}});
        const std::int64_t cols = 2 * N + spec.y_span;
        LogGrid env = environment_for(f, Window::rect(cols, 2 * N));
        SheetLab lab(env, c, N, cols);
        if (id == "sandwich") rep = sample_sandwich(lab, spec);
        else if (id == "sheet_quadrangle") rep = sample_sheet_quadrangle(lab, spec);
        else if (id == "component_monotonicity") rep = sample_component_monotonicity(lab, spec);
        else rep = sample_measure_normalization(lab, spec);
    } else if (id == "lgv") {
        const int k = f.k ? f.k : 2;
        if (k > f.n) throw UsageError("lgv needs k <= n");
        std::vector<Point> U, V;
        for (int i = 1; i <= k; ++i) {
            U.push_back({i, 1});
            V.push_back({f.n - k + i, f.n});
        }
        cfg.update(json{{"n", f.n}, {"k", k}});
        LogGrid env = environment_for(f, Window::rect(f.n, f.n));
        rep = equality_report("lgv", cfg, log_Z_determinant(env, U, V), brute_force_multipath(env, U, V), 1e-10);
    } else {
        throw UsageError("unknown identity '" + id + "'");
    }
    const bool ok = rep.passed();
    emit(f, wrap(cfg, rep.to_json()));
    return ok ? kExitOk : kExitFail;
}

int run_sample(const Flags& f) {
    if (f.cols < 1 || f.rows < 1) throw UsageError("sample needs --cols and --rows");
    if (f.out.empty()) throw UsageError("sample needs --out");
    json cfg = resolved("sample", f);
    cfg.update(json{{"cols", f.cols}, {"rows", f.rows}});
    Environment env = sample_environment(ThetaParam(f.theta), Window::rect(f.cols, f.rows), f.seed);
    save_environment(env, f.out);
    std::cout << wrap(cfg, json{{"path", f.out}, {"cells", env.window().cells()}});
    return kExitOk;
}

int run_sheet(const Flags& f, bool landscape) {
    const ThetaConstants c = constants(f.theta);
    const std::int64_t N = f.N ? f.N : 8;
    json cfg = resolved(landscape ? "landscape" : "sheet", f);
    json res;
    if (landscape) {
        LandscapeQuery q{N, f.x, f.s, f.y, f.t};
        cfg.update(json{{"N", N}, {"x", f.x}, {"s", f.s}, {"y", f.y}, {"t", f.t}});
        FreeEnergyIndex ix = landscape_index(c, q);
        LogGrid env = environment_for(f, required_window(ix));
        res = json{{"start", {ix.start.col, ix.start.row}}, {"end", {ix.end.col, ix.end.row}}, {"drift", ix.drift},
                   {"unscaled", number(landscape_unscaled(env, c, q))}, {"value", number(landscape_value(env, c, q))}};
    } else {
        SheetQuery q{N, f.x, f.y};
        cfg.update(json{{"N", N}, {"x", f.x}, {"y", f.y}, {"ensemble", f.ensemble}});
        FreeEnergyIndex ix = sheet_index(c, q);
        LogGrid env = environment_for(f, required_window(ix));
        res = json{{"start", {ix.start.col, ix.start.row}}, {"end", {ix.end.col, ix.end.row}}, {"drift", ix.drift},
                   {"unscaled", number(sheet_unscaled(env, c, q))}, {"value", number(sheet_value(env, c, q))}};
        if (f.ensemble) {
            SheetLab lab(env, c, N, std::max(ix.end.col, 2 * N));
            res["ensemble_unscaled"] = number(lab.h_bar_ensemble(ix.start.col, ix.end.col));
        }
    }
    emit(f, wrap(cfg, res));
    return kExitOk;
}

int run_curves(const Flags& f) {
    const std::int64_t cols = f.N ? f.N : 2 * f.n;
    const int L = f.k ? f.k : static_cast<int>(f.n);
    json cfg = resolved("curves", f);
    cfg.update(json{{"n", f.n}, {"N", cols}, {"k", L}});
    LogGrid env = environment_for(f, Window::rect(cols, f.n));
    CurveFamily wf = build_curves(env, f.n, L, cols);
    if (f.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "line,col,value\n";
        for (int i = 1; i <= wf.curves(); ++i)
            for (std::int64_t j = wf.start(i); j <= wf.n_max(); ++j) os << i << ',' << j << ',' << wf.value(i, j) << '\n';
        emit(f, os.str());
        return kExitOk;
    }
    json lines = json::array();
    for (int i = 1; i <= wf.curves(); ++i) {
        json vals = json::array();
        for (std::int64_t j = wf.start(i); j <= wf.n_max(); ++j) vals.push_back(number(wf.value(i, j)));
        lines.push_back(json{{"line", i}, {"start", wf.start(i)}, {"values", vals}});
    }
    emit(f, wrap(cfg, json{{"fingerprint", hex64(wf.fingerprint())}, {"curves", lines}}));
    return kExitOk;
}

int run_measure(const Flags& f) {
    const ThetaConstants c = constants(f.theta);
    const std::int64_t N = f.N ? f.N : 8;
    const int k = f.k ? f.k : 1;
    json cfg = resolved("measure", f);
    cfg.update(json{{"N", N}, {"k", k}, {"x", f.x}, {"y", f.y}});
    const std::int64_t cols = sheet_columns(c, N, f.y);
    LogGrid env = environment_for(f, Window::rect(cols, 2 * N));
    PathMeasure mu = SheetLab(env, c, N, cols).measure(k, f.x, f.y);
    emit(f, f.format == "csv" ? mu.to_csv() : wrap(cfg, mu.to_json()));
    return kExitOk;
}

ExperimentConfig load_config(const Flags& f) {
    json j = json::object();
    if (!f.config.empty()) {
        std::ifstream is(f.config);
        if (!is) throw UsageError("config file not found: " + f.config);
        try {
            j = json::parse(is);
        } catch (const json::parse_error& e) {
            throw UsageError("config file " + f.config + " is not valid JSON: " + e.what());
        }
    }
    if (!j.is_object()) throw ParameterError("config schema mismatch: top level must be an object");
    if (!f.kind.empty()) {
        if (j.contains("kind") && j["kind"] != f.kind)
            throw ParameterError("config schema mismatch: --kind " + f.kind + " but config kind is " + j["kind"].dump());
        j["kind"] = f.kind;
    }
    return ExperimentConfig::from_json(j);
}

int run_experiment_cmd(const Flags& f) {
    ExperimentConfig cfg = load_config(f);
    std::cerr << "config: " << cfg.to_json().dump() << "\n";
    StudyReport rep = run_experiment(cfg);
    if (f.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "size,replicate,ok,values\n";
        for (const auto& r : rep.results.records) {
            os << r.size << ',' << r.replicate << ',' << (r.ok ? 1 : 0) << ',';
            for (std::size_t i = 0; i < r.values.size(); ++i) os << (i ? ";" : "") << r.values[i];
            os << '\n';
        }
        emit(f, os.str());
    } else {
        emit(f, rep.body.dump(2) + "\n");
    }
    return kExitOk;
}

void common(CLI::App* sub, Flags& f) {
    sub->add_option("--theta", f.theta, "inverse-gamma shape parameter")->capture_default_str();
    sub->add_option("--seed", f.seed, "master seed")->capture_default_str();
    sub->add_option("--env", f.env_path, "load the environment from a file instead of sampling");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-gamma polymer lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version_string()));
    Flags f;

    auto* sample = app.add_subcommand("sample", "sample an environment to a file");
    common(sample, f);
    sample->add_option("--cols", f.cols, "columns")->required();
    sample->add_option("--rows", f.rows, "rows")->required();

    auto* verify = app.add_subcommand("verify", "check one identity or inequality");
    common(verify, f);
    verify->add_option("--identity", f.identity, "identity to check")
        ->required()
        ->check(CLI::IsMember({"greene", "product", "key1", "bisection", "monotonicity", "quadrangle", "affine",
                               "composition", "sandwich", "sheet_quadrangle", "component_monotonicity", "normalization",
                               "lgv"}));
    verify->add_option("--n", f.n, "strip height / grid size")->capture_default_str();
    verify->add_option("--N", f.N, "columns, or sheet size");
    verify->add_option("--k", f.k, "curve or path count");
    verify->add_option("--l", f.l, "start line");
    verify->add_option("--m", f.m, "end line");
    verify->add_option("--x", f.x);
    verify->add_option("--y", f.y);
    verify->add_option("--s", f.s);
    verify->add_option("--t", f.t);
    verify->add_option("--r", f.r, "intermediate time for composition");
    verify->add_option("--count", f.count, "sampled tuples")->capture_default_str();
    verify->add_option("--method", f.method, "product right side")->check(CLI::IsMember({"auto", "brute", "determinant"}));
    verify->add_option("--a1", f.a1);
    verify->add_option("--a2", f.a2);
    verify->add_option("--a3", f.a3);
    verify->add_option("--a4", f.a4);
    verify->add_option("--beta", f.beta);

    auto* sheet = app.add_subcommand("sheet", "evaluate the prelimiting sheet");
    common(sheet, f);
    sheet->add_option("--N", f.N);
    sheet->add_option("--x", f.x);
    sheet->add_option("--y", f.y);
    sheet->add_flag("--ensemble", f.ensemble, "also evaluate through the line ensemble");

    auto* landscape = app.add_subcommand("landscape", "evaluate the prelimiting landscape");
    common(landscape, f);
    landscape->add_option("--N", f.N);
    landscape->add_option("--x", f.x);
    landscape->add_option("--s", f.s);
    landscape->add_option("--y", f.y);
    landscape->add_option("--t", f.t);

    auto* curves = app.add_subcommand("curves", "build the line ensemble of a strip");
    common(curves, f);
    curves->add_option("--n", f.n, "strip height")->capture_default_str();
    curves->add_option("--N", f.N, "columns");
    curves->add_option("--k", f.k, "number of curves");

    auto* measure = app.add_subcommand("measure", "path measure of the sheet decomposition");
    common(measure, f);
    measure->add_option("--N", f.N);
    measure->add_option("--k", f.k);
    measure->add_option("--x", f.x);
    measure->add_option("--y", f.y);

    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo study");
    common(experiment, f);
    experiment->add_option("--kind", f.kind, "study kind (must match the config)");
    experiment->add_option("--config", f.config, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return kExitOk;
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*sample) return run_sample(f);
        if (*verify) return run_verify(f);
        if (*sheet) return run_sheet(f, false);
        if (*landscape) return run_sheet(f, true);
        if (*curves) return run_curves(f);
        if (*measure) return run_measure(f);
        return run_experiment_cmd(f);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
    } catch (const ConditioningError& e) {
        std::cerr << "conditioning error: " << e.what() << "\n";
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "file error: " << e.what() << "\n";
    }
    return kExitUsage;
}
