// Acceptance suite: one PASS/FAIL line per criterion. Run with criterion
// numbers as arguments to select a subset; exits 1 if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "frozen.hpp"
#include "loggamma/env.hpp"
#include "loggamma/error.hpp"
#include "loggamma/experiments.hpp"
#include "loggamma/grsk.hpp"
#include "loggamma/logspace.hpp"
#include "loggamma/polymer.hpp"
#include "loggamma/scaling.hpp"
#include "loggamma/sheetscape.hpp"
#include "oracles.hpp"

using namespace loggamma;

namespace {

// Tolerances and limits.
constexpr double kGreeneTol = 1e-9;
constexpr double kGreeneSeconds = 30;
constexpr double kProductTol = 1e-9;
constexpr double kKey1Tol = 1e-9;
constexpr double kMeasureTol = 1e-10;
constexpr double kCompositionTol = 1e-10;
constexpr double kInequalitySlack = 1e-10;
constexpr std::size_t kInequalityTuples = 10000;
constexpr double kLgvTol = 1e-10;
constexpr double kEnsembleTol = 1e-10;
constexpr double kBetaUlps = 64;
constexpr double kRecurrenceTol = 1e-12;
constexpr double kSeriesTol = 1e-10;
constexpr double kConstantTol = 1e-12;
constexpr double kShapeFraction = 0.05;
constexpr double kShapeSeconds = 300;
constexpr double kSlopeLo = 0.26, kSlopeHi = 0.41;
constexpr double kControlLo = 0.45, kControlHi = 0.55;
constexpr double kExponentSeconds = 900;
constexpr double kTransversalSeconds = 1200;
constexpr double kTransversalFactor = 2.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool within(double gap, double tol) { return gap <= tol; }  // false for nan

LogGrid env_of(std::int64_t cols, std::int64_t rows, std::uint64_t seed, double theta) {
    return sample_environment(ThetaParam(theta), Window::rect(cols, rows), seed).grid();
}

ExperimentConfig load_config(const std::string& name) {
    const std::string path = std::string(LOGGAMMA_CONFIG_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return ExperimentConfig::from_json(json::parse(in));
}

std::vector<std::int64_t> sorted_distinct(RandomStream& rng, std::int64_t lo, std::int64_t hi, int k) {
    std::vector<std::int64_t> v;
    while (static_cast<int>(v.size()) < k) {
        const std::int64_t c = rng.uniform_int(lo, hi);
        if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
    }
    std::sort(v.begin(), v.end());
    return v;
}

Outcome greene() {
    RandomStream rng(1001);
    const double thetas[] = {0.7, 1.0, 2.0};
    double worst = 0, worst_oracle = 0;
    int fails = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
        const double theta = thetas[i % 3];
        const std::int64_t n = rng.uniform_int(1, 8), N = rng.uniform_int(1, 12);
        const int k = static_cast<int>(rng.uniform_int(1, std::min<std::int64_t>(3, N)));
        std::vector<std::int64_t> u, v;
        do {
            u = sorted_distinct(rng, 1, N, k);
            v = sorted_distinct(rng, 1, N, k);
        } while (!std::equal(u.begin(), u.end(), v.begin(), [](auto a, auto b) { return a <= b; }));
        LogGrid g = env_of(N, n, rng.next_u64(), theta);
        IdentityReport r = verify_greene(g, n, u, v, nullptr, kGreeneTol);
        std::vector<Point> U, V;
        for (auto c : u) U.push_back({c, 1});
        for (auto c : v) V.push_back({c, n});
        const double o = relative_gap(r.lhs, oracle::transfer_multipath(g, U, V));
        if (!r.passed() || !within(r.rel_gap, kGreeneTol) || !within(o, kGreeneTol)) ++fails;
        worst = std::max(worst, r.rel_gap);
        worst_oracle = std::max(worst_oracle, o);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {fails == 0 && secs < kGreeneSeconds,
            fmt("200 cases, %d failing, max rel gap %.2e (oracle %.2e), %.1f s (limit %.0f s)", fails, worst, worst_oracle,
                secs, kGreeneSeconds)};
}

Outcome product() {
    double worst = 0;
    int cases = 0, fails = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::int64_t n = 3 + static_cast<std::int64_t>(seed % 6);
        const double theta = seed % 2 ? 1.0 : 0.7;
        LogGrid g = env_of(12, n, 2000 + seed, theta);
        CurveFamily wf = build_curves(g, n, 3, 12);
        for (int l = 1; l <= 3; ++l)
            for (std::int64_t N = l; N <= 12; ++N) {
                std::vector<Point> U, V;
                for (int i = 1; i <= l; ++i) U.push_back({i, 1});
                for (std::int64_t c = N - l + 1; c <= N; ++c) V.push_back({c, n});
                double lhs = 0;
                for (int i = 1; i <= l; ++i) lhs += wf.value(i, N);
                const double gap = relative_gap(lhs, oracle::transfer_multipath(strip(g, N, n), U, V));
                IdentityReport r = verify_product(g, n, wf, l, N, false, kProductTol);
                ++cases;
                if (!r.passed() || !within(gap, kProductTol)) ++fails;
                worst = std::max({worst, gap, r.rel_gap});
            }
    }
    return {fails == 0, fmt("%d (seed, l, N) cases, %d failing, max rel gap %.2e", cases, fails, worst)};
}

Outcome key1() {
    RandomStream rng(3001);
    double worst = 0;
    int fails = 0;
    for (int i = 0; i < 100; ++i) {
        const std::int64_t n = rng.uniform_int(2, 8);
        const int k = static_cast<int>(rng.uniform_int(1, n - 1));
        const std::int64_t x = rng.uniform_int(k + 1, k + 5);
        const std::int64_t y = rng.uniform_int(x + k, x + k + 6);
        LogGrid g = env_of(y, n, rng.next_u64(), i % 2 ? 1.0 : 2.0);
        Key1Result r = verify_key1(g, n, x, y, k, kKey1Tol);
        const double gap = std::max({r.main.rel_gap, r.concentration.rel_gap, r.searrow.rel_gap});
        if (!r.passed() || !within(gap, kKey1Tol)) ++fails;
        worst = std::max(worst, gap);
    }
    return {fails == 0, fmt("100 draws with the reverse construction, %d failing, max rel gap %.2e", fails, worst)};
}

Outcome measure_and_composition() {
    const ThetaConstants c = constants(1.0);
    RandomStream rng(4001);
    double worst_mu = 0, worst_comp = 0;
    int fails = 0, measures = 0, comps = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::int64_t N = 2 + static_cast<std::int64_t>((seed * 7) % 31);  // 2..32
        const std::int64_t span = 8;
        LogGrid g = env_of(2 * N + span, 2 * N, 4100 + seed, 1.0);
        SheetLab lab(g, c, N, 2 * N + span);
        for (int j = 0; j < 3; ++j) {
            const int k = static_cast<int>(rng.uniform_int(1, std::min<std::int64_t>(2 * N - 1, 6)));
            const std::int64_t xb = rng.uniform_int(1, 2 * N), yh = rng.uniform_int(2 * N, 2 * N + span);
            PathMeasure mu = lab.measure(k, xb, yh);
            ++measures;
            const double e = std::fabs(std::expm1(mu.log_total));
            if (!within(e, kMeasureTol)) ++fails;
            worst_mu = std::max(worst_mu, e);
        }
        const std::int64_t a = rng.uniform_int(0, 4), b = a + rng.uniform_int(0, 4);
        LandscapeQuery q{N, c.lattice_x(N, a), 0.0, c.lattice_x(N, b), 1.0};
        const Window w = required_window(landscape_index(c, q));
        LogGrid lg = env_of(w.col_max, w.row_max, 4200 + seed, 1.0);
        const double r = static_cast<double>(rng.uniform_int(1, 2 * N - 1)) / (2.0 * N);
        IdentityReport rep = verify_composition(lg, c, q, r, kCompositionTol);
        ++comps;
        if (!rep.passed() || !within(rep.rel_gap, kCompositionTol)) ++fails;
        worst_comp = std::max(worst_comp, rep.rel_gap);
    }
    return {fails == 0, fmt("%d measures |sum mu - 1| max %.2e, %d compositions max rel gap %.2e, %d failing, 100 seeds, N <= 32",
                            measures, worst_mu, comps, worst_comp, fails)};
}

Outcome inequalities() {
    std::size_t samples[4] = {0, 0, 0, 0}, violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    auto take = [&](const IdentityReport& r, int slot) {
        samples[slot] += r.params["samples"].get<std::size_t>();
        violations += r.params["violations"].get<std::size_t>();
        worst = std::min(worst, r.lhs);
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double theta = seed % 2 ? 1.0 : 0.5;
        const std::int64_t n = 4 + static_cast<std::int64_t>(seed % 4);
        LogGrid g = env_of(16, n, 5000 + seed, theta);
        CurveFamily wf = build_curves(g, n, static_cast<int>(n), 16);
        take(verify_monotonicity(wf, {500, 5100 + seed}, kInequalitySlack), 0);
        take(verify_quadrangle(g, n, 16, {500, 5200 + seed}, kInequalitySlack), 1);

        const ThetaConstants c = constants(theta);
        const std::int64_t N = 4 + static_cast<std::int64_t>(seed % 5);
        LogGrid sg = env_of(2 * N + 8, 2 * N, 5300 + seed, theta);
        SheetLab lab(sg, c, N, 2 * N + 8);
        const int k = 1 + static_cast<int>(seed % 3);
        SheetSampleSpec spec{500, 5400 + seed, k, 6, 8};
        take(sample_sandwich(lab, spec, kInequalitySlack), 2);
        take(sample_measure_normalization(lab, spec, kInequalitySlack), 3);
    }
    const std::size_t total = samples[0] + samples[1] + samples[2] + samples[3];
    return {violations == 0 && total >= kInequalityTuples,
            fmt("%zu checks (monotonicity %zu, quadrangle %zu, sandwich %zu, A+B %zu), %zu violations, worst margin %.2e",
                total, samples[0], samples[1], samples[2], samples[3], violations, worst)};
}

// All k-subsets of pts, k <= 3.
std::vector<std::vector<Point>> subsets(const std::vector<Point>& pts, int k) {
    std::vector<std::vector<Point>> out;
    const std::size_t m = pts.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == idx.size()) {
            std::vector<Point> s;
            for (auto i : idx) s.push_back(pts[i]);
            out.push_back(std::move(s));
            return;
        }
        for (std::size_t i = from; i < m; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

Outcome lgv() {
    std::size_t pairs = 0, feasible = 0, det = 0, sweep = 0, brute = 0, fails = 0, det_checked = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::int64_t a = 2 + static_cast<std::int64_t>(seed % 7), b = 2 + static_cast<std::int64_t>((seed / 7) % 7);
        LogGrid g = env_of(a, b, 6000 + seed, seed % 3 == 0 ? 0.7 : 1.0);
        std::vector<Point> lower, upper;
        for (std::int64_t r = b; r >= 1; --r) lower.push_back({1, r});
        for (std::int64_t c = 2; c <= a; ++c) lower.push_back({c, 1});
        for (std::int64_t c = 1; c <= a; ++c) upper.push_back({c, b});
        for (std::int64_t r = b - 1; r >= 1; --r) upper.push_back({a, r});
        const bool small = a * b <= 16;
        for (int k = 1; k <= 3; ++k) {
            const auto Us = subsets(lower, k), Vs = subsets(upper, k);
            for (const auto& U : Us)
                for (const auto& V : Vs) {
                    ++pairs;
                    if (!multipath_feasible(g, U, V)) {
                        if (oracle::transfer_multipath(g, U, V) != -INFINITY) ++fails;
                        continue;
                    }
                    ++feasible;
                    const double ref = oracle::transfer_multipath(g, U, V);
                    MultipathMethod m{};
                    const double got = log_Z_multipath(g, U, V, &m);
                    double gap = relative_gap(got, ref);
                    if (m == MultipathMethod::Determinant) ++det;
                    if (m == MultipathMethod::Sweep) ++sweep;
                    if (determinant_admissible(g, U, V)) {
                        try {
                            gap = std::max(gap, relative_gap(log_Z_determinant(g, U, V), ref));
                            ++det_checked;
                        } catch (const ConditioningError&) {
                        }
                    }
                    if (small) {
                        gap = std::max(gap, relative_gap(brute_force_multipath(g, U, V), ref));
                        ++brute;
                    }
                    if (!within(gap, kLgvTol)) ++fails;
                    worst = std::max(worst, gap);
                }
        }
    }
    return {fails == 0,
            fmt("%zu boundary pairs (%zu feasible; routed %zu determinant, %zu sweep; %zu raw determinants, %zu brute force), "
                "%zu failing, max rel gap %.2e",
                pairs, feasible, det, sweep, det_checked, brute, fails, worst)};
}

Outcome beta_limit() {
    const double betas[] = {1.0, 10.0, 1e3, 1e6};
    std::size_t queries = 0, fails = 0;
    double worst_fe = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::int64_t n = 4 + static_cast<std::int64_t>(seed % 2), N = 8;
        LogGrid g = env_of(N, n, 7000 + seed, seed % 2 ? 1.0 : 0.5);
        CurveFamily wf = build_curves(g, n, static_cast<int>(n), N);
        // Round-off slack at the magnitude of the summed curve values.
        double magnitude = 1.0;
        for (int i = 1; i <= wf.curves(); ++i)
            for (std::int64_t j = wf.start(i); j <= N; ++j) magnitude = std::max(magnitude, std::fabs(wf.value(i, j)));
        const double slack = kBetaUlps * std::numeric_limits<double>::epsilon() * magnitude;
        auto check = [&](double value, const oracle::Enumeration& o, double beta, double sign) {
            // sign = -1 for reverse energies, whose value is minus a free energy.
            const double fe = sign * value;
            const double d = fe - o.max;
            const double bound = std::log(o.count) / beta;
            ++queries;
            const double fe_gap = relative_gap(fe, o.free_energy(beta));
            if (!(d >= -slack && d <= bound + slack) || !within(fe_gap, kEnsembleTol)) {
                ++fails;
                if (std::getenv("ACCEPTANCE_VERBOSE"))
                    std::fprintf(stderr, "beta %g sign %g value %.17g max %.17g d %.3e bound %.3e gap %.3e count %g\n", beta, sign,
                                 value, o.max, d, bound, fe_gap, o.count);
            }
            worst_fe = std::max(worst_fe, fe_gap);
        };
        for (double beta : betas) {
            for (int l = 1; l <= wf.curves(); ++l)
                for (int m = 1; m <= l; ++m)
                    for (std::int64_t x = wf.start(l); x <= N; x += 2)
                        for (std::int64_t y = std::max(x, wf.start(m)); y <= N; y += 3) {
                            oracle::Enumeration o = oracle::enumerate_curve_paths(wf, x, l, y, m);
                            if (o.count == 0) continue;
                            EnsembleValue v = ensemble_free_energy(wf, {x, l, y, m, beta});
                            if (!(v.excess >= 0 && v.excess <= v.log_count)) ++fails;
                            check(v.value, o, beta, 1.0);
                        }
            for (int k = 1; k < wf.curves(); ++k)
                for (std::int64_t z = 1; z + k <= N; ++z)
                    for (std::int64_t w = z + k; w <= N; w += 2) {
                        if (wf.start(1) > z || wf.start(k + 1) > w) continue;
                        oracle::Enumeration o = oracle::enumerate_reverse_tuples(wf, z, w, k);
                        if (o.count == 0) continue;
                        EnsembleValue v;
                        try {
                            v = ensemble_reverse_energy(wf, z, w, k, beta);
                        } catch (const DomainError&) {
                            continue;
                        }
                        if (!(v.excess >= 0 && v.excess <= v.log_count)) ++fails;
                        check(v.value, o, beta, -1.0);
                    }
        }
    }
    return {fails == 0 && queries > 0,
            fmt("%zu queries over beta in {1, 10, 1e3, 1e6}, %zu outside [0, log(#)/beta], free-energy rel gap max %.2e",
                queries, fails, worst_fe)};
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

Outcome special_functions() {
    double rec = 0, ser = 0, cst = 0, sym = 0;
    for (double x : {0.01, 0.2, 0.35, 0.9, 1.7, 3.3, 11.0, 123.4}) {
        rec = std::max({rec, rel(digamma(x), digamma(x + 1) - 1 / x), rel(trigamma(x), trigamma(x + 1) + 1 / (x * x)),
                        rel(tetragamma(x), tetragamma(x + 1) - 2 / (x * x * x))});
    }
    for (const auto& f : frozen::kPolygamma) {
        ser = std::max({ser, rel(digamma(f.x), static_cast<double>(oracle::digamma_series(f.x))),
                        rel(trigamma(f.x), static_cast<double>(oracle::trigamma_series(f.x))),
                        rel(tetragamma(f.x), static_cast<double>(oracle::tetragamma_series(f.x))), rel(digamma(f.x), f.psi),
                        rel(trigamma(f.x), f.psi1), rel(tetragamma(f.x), f.psi2)});
    }
    for (double theta : {0.5, 1.0, 2.0, 5.0}) {
        const ThetaConstants c = constants(theta);
        cst = std::max({cst, rel(c.h1, 2 * digamma(theta / 2)), rel(c.p, -digamma(theta / 2))});
        for (double z : {0.1, 0.3, 0.7}) {
            const double zz = z * theta;
            sym = std::max({sym, rel(g_theta(theta, theta - zz), 1 / g_theta(theta, zz)),
                            rel(g_theta_inv(theta, g_theta(theta, zz)), zz)});
        }
    }
    for (const auto& f : frozen::kTheta) {
        const ThetaConstants c = constants(f.theta);
        cst = std::max({cst, rel(c.d1, f.d1), rel(c.sigma_p, f.sigma_p), rel(c.q, f.q)});
    }
    return {within(rec, kRecurrenceTol) && within(sym, kRecurrenceTol) && within(ser, kSeriesTol) && within(cst, kConstantTol),
            fmt("recurrences %.1e, g symmetry %.1e (tol %.0e); series and reference %.1e (tol %.0e); theta constants %.1e (tol %.0e)",
                rec, sym, kRecurrenceTol, ser, kSeriesTol, cst, kConstantTol)};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome shape_lln() {
    const auto t0 = std::chrono::steady_clock::now();
    StudyReport r = run_experiment(load_config("shape_lln.json"));
    const double secs = seconds_since(t0);
    const auto& per = r.body["per_size"];
    const double d_small = std::fabs(per.front()["deviation"].get<double>());
    const double d_large = std::fabs(per.back()["deviation"].get<double>());
    const double target = std::fabs(digamma(1.0));
    const bool ok = !r.results.partial() && d_large < d_small && d_large <= kShapeFraction * target && secs < kShapeSeconds;
    return {ok, fmt("|dev| N=%lld: %.3e, N=%lld: %.3e, bound %.3e, %.1f s (limit %.0f s)",
                    static_cast<long long>(per.front()["N"].get<std::int64_t>()), d_small,
                    static_cast<long long>(per.back()["N"].get<std::int64_t>()), d_large, kShapeFraction * target, secs,
                    kShapeSeconds)};
}

Outcome exponent() {
    const auto t0 = std::chrono::steady_clock::now();
    StudyReport r = run_experiment(load_config("exponent.json"));
    const double secs = seconds_since(t0);
    const double slope = r.body["fit"]["slope"].get<double>(), se = r.body["fit"]["slope_se"].get<double>();
    const double ctrl = r.body["control_fit"]["slope"].get<double>();
    const bool ok = !r.results.partial() && slope >= kSlopeLo && slope <= kSlopeHi && ctrl >= kControlLo && ctrl <= kControlHi &&
                    secs < kExponentSeconds;
    return {ok, fmt("slope %.4f (se %.4f) in [%.2f, %.2f], control %.4f in [%.2f, %.2f], %.1f s (limit %.0f s)", slope, se,
                    kSlopeLo, kSlopeHi, ctrl, kControlLo, kControlHi, secs, kExponentSeconds)};
}

Outcome transversal() {
    const auto t0 = std::chrono::steady_clock::now();
    StudyReport r = run_experiment(load_config("transversal.json"));
    const double secs = seconds_since(t0);
    std::ostringstream med;
    double lo = INFINITY, hi = 0;
    bool decreasing = true;
    for (const auto& e : r.body["per_r"]) {
        const double m = e["median"].get<double>();
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        decreasing = decreasing && e["exceedance_decreasing"].get<bool>();
        med << " r=" << e["r"].get<std::int64_t>() << ":" << fmt("%.3f", m);
    }
    const bool ok = !r.results.partial() && lo > 0 && hi <= kTransversalFactor * lo && decreasing && secs < kTransversalSeconds;
    return {ok, fmt("medians%s, spread %.3f (limit %.1f), exceedance decreasing %s, %.1f s (limit %.0f s)", med.str().c_str(),
                    lo > 0 ? hi / lo : INFINITY, kTransversalFactor, decreasing ? "yes" : "no", secs, kTransversalSeconds)};
}

Outcome defect_and_flatness() {
    ExperimentConfig pc = load_config("point_to_line.json");
    StudyReport p = run_experiment(pc);
    std::size_t violations = 0, samples = 0;
    double min_defect = INFINITY;
    bool slack_ok = true;
    const double p_const = std::fabs(constants(pc.theta).p);
    for (const auto& e : p.body["per_size"]) {
        const auto N = e["N"].get<std::int64_t>();
        const double m = e["midpoint_defect"]["min"].get<double>();
        // One ulp at the magnitude of log Z over the grid.
        const double ulp = std::nextafter(4.0 * N * p_const, INFINITY) - 4.0 * N * p_const;
        slack_ok = slack_ok && m >= -ulp;
        min_defect = std::min(min_defect, m);
        violations += e["midpoint_defect"]["violations"].get<std::size_t>();
        samples += p.results.column(N, 0).size();
    }
    StudyReport t = run_experiment(load_config("increment_tail.json"));
    std::ostringstream spreads;
    for (const auto& e : t.body["per_size"])
        for (const char* v : {"temporal", "spatial"}) spreads << " " << v << " " << fmt("%.2f", e["variants"][v]["q99_spread"].get<double>());
    const bool flag = t.body["flatness_flag"].get<bool>();
    const bool ok = !p.results.partial() && !t.results.partial() && slack_ok && !flag;
    return {ok, fmt("defect min %.3e over %zu samples (%zu strictly negative, 1 ulp slack), flatness q99 spread%s, flag %s",
                    min_defect, samples, violations, spreads.str().c_str(), flag ? "raised" : "not raised")};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "Greene invariance", greene},
    {2, "product identity", product},
    {3, "key identity", key1},
    {4, "path measure and composition", measure_and_composition},
    {5, "inequality suite", inequalities},
    {6, "multipath determinant vs enumeration", lgv},
    {7, "beta limit", beta_limit},
    {8, "special functions", special_functions},
    {9, "shape law of large numbers", shape_lln},
    {10, "fluctuation exponent", exponent},
    {11, "transversal exponent", transversal},
    {12, "superadditivity defect and increment flatness", defect_and_flatness},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : kCriteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %2d %-46s %s  %s [%.1f s]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
