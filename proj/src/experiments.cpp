#include "loggamma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "loggamma/env.hpp"
#include "loggamma/error.hpp"
#include "loggamma/logspace.hpp"
#include "loggamma/polymer.hpp"
#include "loggamma/scaling.hpp"

namespace loggamma {

namespace {

const char* const kKinds[] = {"shape", "lln_direction", "exponent", "transversal", "increment_tail", "point_to_line"};

template <typename T>
T param_or(const json& params, const char* key, T fallback) {
    if (!params.contains(key)) return fallback;
    try {
        return params.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config parameter '") + key + "': " + e.what());
    }
}

double pow23(std::int64_t N) { return std::pow(static_cast<double>(N), 2.0 / 3.0); }

json failed_tasks(const ReplicateResults& r) {
    json out = json::array();
    for (const auto& rec : r.records)
        if (!rec.ok) out.push_back(json{{"size", rec.size}, {"replicate", rec.replicate}, {"error", rec.error}});
    return out;
}

json summary_json(const Summary& s) {
    return json{{"n", s.n}, {"mean", number(s.mean)}, {"sd", number(s.sd)}, {"se", number(s.se)}, {"kurtosis", number(s.kurtosis)}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ParameterError("experiment config must be a JSON object");
    static const char* const known[] = {"kind", "theta", "sizes", "replicates", "seed", "params"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
            throw ParameterError("unknown config key '" + key + "'");
    }
    ExperimentConfig c;
    try {
        c.kind = j.at("kind").get<std::string>();
        c.theta = j.value("theta", 1.0);
        c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
        c.replicates = j.at("replicates").get<std::size_t>();
        c.seed = j.value("seed", std::uint64_t{0});
        c.params = j.value("params", json::object());
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    return json{{"kind", kind}, {"theta", theta}, {"sizes", sizes}, {"replicates", replicates}, {"seed", seed}, {"params", params}};
}

void ExperimentConfig::validate() const {
    if (std::find_if(std::begin(kKinds), std::end(kKinds), [&](const char* k) { return kind == k; }) == std::end(kKinds))
        throw ParameterError("unknown experiment kind '" + kind + "'");
    if (!(theta > 0)) throw ParameterError("theta must be positive");
    if (replicates < 2) throw ParameterError("replicates must be at least 2");
    if (sizes.empty()) throw ParameterError("sizes must be non-empty");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw ParameterError("sizes must be positive");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw ParameterError("sizes must be strictly increasing");
    }
    if (!params.is_object()) throw ParameterError("params must be an object");
}

std::vector<double> ReplicateResults::column(std::int64_t size, std::size_t j) const {
    std::vector<double> out;
    for (const auto& r : records)
        if (r.ok && r.size == size && j < r.values.size()) out.push_back(r.values[j]);
    return out;
}

unsigned default_workers() {
    if (const char* s = std::getenv("LOGGAMMA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RandomStream replicate_stream(std::uint64_t seed, std::int64_t size, std::size_t replicate) {
    return RandomStream::derive(seed ^ mix64(static_cast<std::uint64_t>(size)), replicate);
}

ReplicateResults run_replicates(const ExperimentConfig& config, const ReplicateFn& fn, const RunOptions& options) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    ReplicateResults out;
    const std::size_t M = config.replicates;
    out.records.resize(config.sizes.size() * M);
    for (std::size_t s = 0; s < config.sizes.size(); ++s)
        for (std::size_t r = 0; r < M; ++r) {
            auto& rec = out.records[s * M + r];
            rec.size = config.sizes[s];
            rec.replicate = r;
        }

    std::vector<std::size_t> order = options.order;
    if (order.empty()) {
        order.resize(out.records.size());
        std::iota(order.begin(), order.end(), 0);
    } else if (order.size() != out.records.size()) {
        throw ParameterError("task order must be a permutation of all tasks");
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= order.size()) return;
            auto& rec = out.records.at(order[i]);
            try {
                RandomStream rng = replicate_stream(config.seed, rec.size, rec.replicate);
                rec.values = fn(rec.size, rng);
            } catch (const std::bad_alloc&) {
                rec.ok = false;
                rec.error = "capacity: out of memory";
            } catch (const std::exception& e) {
                rec.ok = false;
                rec.error = e.what();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(options.workers ? options.workers : default_workers(),
                                                       static_cast<unsigned>(order.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& rec : out.records)
        if (!rec.ok) ++out.failed;
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

Summary summarize(std::span<const double> v) {
    Summary s;
    s.n = v.size();
    if (s.n == 0) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(s.n);
    double m2 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    if (s.n > 1) {
        s.sd = std::sqrt(m2 / static_cast<double>(s.n - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    m2 /= static_cast<double>(s.n);
    m4 /= static_cast<double>(s.n);
    s.kurtosis = m2 > 0 ? m4 / (m2 * m2) : 0.0;
    return s;
}

double quantile(std::vector<double> v, double p) {
    if (v.empty()) throw DomainError("quantile of an empty sample");
    if (!(p >= 0 && p <= 1)) throw DomainError("quantile level must lie in [0, 1]");
    std::sort(v.begin(), v.end());
    const double h = p * static_cast<double>(v.size()) - 0.5;
    if (h <= 0) return v.front();
    if (h >= static_cast<double>(v.size() - 1)) return v.back();
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

json ExponentFit::to_json() const {
    json pts = json::array();
    for (std::size_t i = 0; i < points.size(); ++i)
        pts.push_back(json{{"log_N", points[i].x}, {"log_stat", points[i].y}, {"se", points[i].y_se}, {"residual", residuals[i]}});
    return json{{"slope", slope}, {"intercept", intercept}, {"slope_se", slope_se}, {"points", pts}};
}

ExponentFit fit_ols(std::vector<FitPoint> points) {
    if (points.size() < 2) throw ConditioningError("fit needs at least two points");
    ExponentFit f;
    double mx = 0, my = 0;
    for (const auto& p : points) {
        if (!std::isfinite(p.y)) throw ConditioningError("fit point is not finite (degenerate variance?)");
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    if (!(sxx > 0)) throw ConditioningError("fit needs distinct x values");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double var = 0;
    for (const auto& p : points) {
        const double w = (p.x - mx) / sxx;
        var += w * w * p.y_se * p.y_se;
        f.residuals.push_back(p.y - f.intercept - f.slope * p.x);
    }
    f.slope_se = std::sqrt(var);
    f.points = std::move(points);
    return f;
}

StreamedValues streamed_point_to_point(double theta, std::int64_t cols, std::int64_t rows, RandomStream& rng, bool all_ones) {
    if (!(theta > 0)) throw ParameterError("theta must be positive");
    if (cols < 1 || rows < 1) throw DomainError("streamed grid must be non-empty");
    if (static_cast<std::uint64_t>(cols) * static_cast<std::uint64_t>(rows) > kMaxGridCells)
        throw CapacityError("streamed grid exceeds the cell limit");
    std::vector<double> row(static_cast<std::size_t>(cols), kNegInf);
    StreamedValues out;
    for (std::int64_t r = 1; r <= rows; ++r) {
        double left = kNegInf;
        for (std::int64_t c = 1; c <= cols; ++c) {
            const double w = all_ones ? 0.0 : rng.log_inverse_gamma(theta);
            double& cell = row[static_cast<std::size_t>(c - 1)];
            cell = (r == 1 && c == 1) ? w : w + log_add(left, cell);
            left = cell;
            if (r == 1 || c == cols) out.fixed_path += w;
        }
    }
    out.log_Z = row.back();
    return out;
}

StudyReport shape_study(const ExperimentConfig& config, const RunOptions& options) {
    const bool ones = param_or(config.params, "all_ones", false);
    const double theta = config.theta;
    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t N, RandomStream& rng) {
        return std::vector<double>{streamed_point_to_point(theta, N, N, rng, ones).log_Z / (2.0 * static_cast<double>(N))};
    }, options);
    const double target = ones ? std::log(2.0) : -digamma(theta / 2.0);
    json per = json::array();
    std::vector<double> devs;
    for (auto N : config.sizes) {
        auto v = rep.results.column(N, 0);
        Summary s = summarize(v);
        const double dev = std::fabs(s.mean - target);
        devs.push_back(dev);
        json e{{"N", N}, {"summary", summary_json(s)}, {"deviation", dev}, {"relative_deviation", dev / std::fabs(target)}};
        if (ones) {
            const double exact = (std::lgamma(2.0 * N - 1.0) - 2.0 * std::lgamma(static_cast<double>(N))) / (2.0 * N);
            e["exact_all_ones"] = exact;
        }
        per.push_back(std::move(e));
    }
    rep.body["target"] = target;
    rep.body["target_name"] = ones ? "log 2" : "-digamma(theta/2)";
    rep.body["all_ones"] = ones;
    rep.body["per_size"] = std::move(per);
    rep.body["deviation_decreases"] = devs.size() >= 2 && devs.back() < devs.front();
    return rep;
}

StudyReport lln_direction_study(const ExperimentConfig& config, const RunOptions& options) {
    std::vector<std::vector<std::int64_t>> dirs = param_or(config.params, "directions", std::vector<std::vector<std::int64_t>>{{1, 1}, {2, 1}, {3, 1}});
    for (const auto& d : dirs)
        if (d.size() != 2 || d[0] < 1 || d[1] < 1) throw ParameterError("directions must be pairs of positive integers");
    const double theta = config.theta;
    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t N, RandomStream& rng) {
        std::vector<double> out;
        for (const auto& d : dirs) out.push_back(streamed_point_to_point(theta, d[0] * N, d[1] * N, rng).log_Z / static_cast<double>(N));
        return out;
    }, options);
    const ShapeForm forms[] = {ShapeForm::Printed, ShapeForm::Symmetric, ShapeForm::Variational};
    json per = json::array();
    const std::int64_t N_last = config.sizes.back();
    std::vector<double> total_dev(3, 0.0);
    for (auto N : config.sizes) {
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            Summary s = summarize(rep.results.column(N, j));
            json pred = json::object();
            for (std::size_t f = 0; f < 3; ++f) {
                const double v = shape_at(theta, static_cast<double>(dirs[j][0]), static_cast<double>(dirs[j][1]), forms[f]);
                pred[shape_form_name(forms[f])] = json{{"prediction", v}, {"deviation", s.mean - v}};
                if (N == N_last) total_dev[f] += std::fabs(s.mean - v);
            }
            per.push_back(json{{"N", N}, {"direction", dirs[j]}, {"summary", summary_json(s)}, {"forms", pred}});
        }
    }
    std::size_t best = static_cast<std::size_t>(std::min_element(total_dev.begin(), total_dev.end()) - total_dev.begin());
    rep.body["per_size"] = std::move(per);
    json td = json::object();
    for (std::size_t f = 0; f < 3; ++f) td[shape_form_name(forms[f])] = total_dev[f];
    rep.body["total_abs_deviation_at_largest_N"] = td;
    rep.body["best_form"] = shape_form_name(forms[best]);
    rep.body["active_form"] = shape_form_name(kActiveShapeForm);
    return rep;
}

StudyReport fluctuation_exponent(const ExperimentConfig& config, const RunOptions& options) {
    if (config.sizes.size() < 4) throw ParameterError("exponent fit needs at least 4 sizes");
    const double theta = config.theta;
    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t N, RandomStream& rng) {
        StreamedValues v = streamed_point_to_point(theta, N, N, rng);
        return std::vector<double>{v.log_Z, v.fixed_path};
    }, options);
    std::vector<FitPoint> main_pts, ctrl_pts;
    json per = json::array();
    for (auto N : config.sizes) {
        Summary a = summarize(rep.results.column(N, 0));
        Summary b = summarize(rep.results.column(N, 1));
        if (!(a.sd > 0) || !(b.sd > 0)) throw ConditioningError("degenerate variance at N = " + std::to_string(N));
        const double lx = std::log(static_cast<double>(N));
        main_pts.push_back({lx, std::log(a.sd), std::sqrt(std::max(0.0, a.kurtosis - 1.0) / (4.0 * static_cast<double>(a.n)))});
        ctrl_pts.push_back({lx, std::log(b.sd), std::sqrt(std::max(0.0, b.kurtosis - 1.0) / (4.0 * static_cast<double>(b.n)))});
        per.push_back(json{{"N", N}, {"log_Z", summary_json(a)}, {"fixed_path", summary_json(b)}});
    }
    ExponentFit fit = fit_ols(main_pts), ctrl = fit_ols(ctrl_pts);
    rep.body["per_size"] = std::move(per);
    rep.body["fit"] = fit.to_json();
    rep.body["control_fit"] = ctrl.to_json();
    return rep;
}

StudyReport transversal_study(const ExperimentConfig& config, const RunOptions& options) {
    auto Ks = param_or(config.params, "K", std::vector<double>{1, 2, 3});
    const double theta = config.theta;
    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t r, RandomStream& rng) {
        const std::int64_t side = 2 * r + 1;
        Environment env = sample_environment(ThetaParam(theta), Window::rect(side, side), rng.next_u64());
        AntidiagonalMax m = argmax_on_antidiagonal(env, {1, 1}, r, {side, side});
        return std::vector<double>{static_cast<double>(m.index), static_cast<double>(m.ties)};
    }, options);
    json per = json::array();
    std::vector<double> medians;
    bool all_decreasing = true;
    for (auto r : config.sizes) {
        const double scale = std::pow(static_cast<double>(r), 2.0 / 3.0);
        auto idx = rep.results.column(r, 0);
        std::vector<double> ratio, signed_ratio;
        for (double i : idx) {
            ratio.push_back(std::fabs(i) / scale);
            signed_ratio.push_back(i / scale);
        }
        double ties = 0;
        for (double t : rep.results.column(r, 1)) ties += t;
        json exceed = json::array();
        double prev = 2.0;
        bool decreasing = true;
        for (double K : Ks) {
            const double pk = static_cast<double>(std::count_if(ratio.begin(), ratio.end(), [&](double v) { return v > K; })) /
                              static_cast<double>(ratio.size());
            exceed.push_back(json{{"K", K}, {"probability", pk}});
            // Strict decrease, except that an all-zero tail counts as decreasing.
            if (!(pk < prev || (pk == 0 && prev == 0))) decreasing = false;
            prev = pk;
        }
        all_decreasing = all_decreasing && decreasing;
        const double med = quantile(ratio, 0.5);
        medians.push_back(med);
        Summary sd = summarize(signed_ratio);
        per.push_back(json{{"r", r},
                           {"median", med},
                           {"q95", quantile(ratio, 0.95)},
                           {"exceedance", exceed},
                           {"exceedance_decreasing", decreasing},
                           {"signed_mean", sd.mean},
                           {"signed_se", sd.se},
                           {"signed_mean_within_3se", std::fabs(sd.mean) <= 3.0 * sd.se},
                           {"ties", ties}});
    }
    const double hi = *std::max_element(medians.begin(), medians.end());
    const double lo = *std::min_element(medians.begin(), medians.end());
    rep.body["per_r"] = std::move(per);
    rep.body["median_ratio_spread"] = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    rep.body["medians_within_factor_2"] = lo > 0 && hi <= 2.0 * lo;
    rep.body["exceedance_decreasing"] = all_decreasing;
    return rep;
}

StudyReport increment_tail_study(const ExperimentConfig& config, const RunOptions& options) {
    const double t = param_or(config.params, "t", 1.0);
    const double y = param_or(config.params, "y", 0.0);
    auto steps = param_or(config.params, "d_steps", std::vector<std::int64_t>{8, 32, 128});
    if (!(t > 0)) throw ParameterError("increment tail needs t > 0");
    if (std::fabs(y) > 2) throw ParameterError("increment tail keeps |y| <= 2");
    if (steps.empty()) throw ParameterError("d_steps must be non-empty");
    for (auto m : steps)
        if (m < 1) throw DomainError("d steps must be positive lattice steps");
    const ThetaConstants c = constants(config.theta);
    const std::int64_t m_max = *std::max_element(steps.begin(), steps.end());
    const double theta = config.theta;

    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t N, RandomStream& rng) {
        const std::int64_t yb = scale_space(c, N, y) + 1;
        const std::int64_t tc = scale_time(N, t);
        if (2.0 * N * t != static_cast<double>(tc)) throw DomainError("t is not on the time lattice");
        const Point start{2, 1};  // x = s = 0
        const Point end{yb + tc, tc};
        if (!reachable(start, end)) throw DomainError("increment tail endpoints are not ordered");
        const Point corner{end.col + m_max, end.row + m_max};
        Environment env = sample_environment(ThetaParam(theta), Window::rect(corner.col, corner.row), rng.next_u64());
        LogGrid F = forward_table(env, start, corner);
        const double base = F.at(end.col, end.row);
        const double sc = c.sheet_scale(N);
        std::vector<double> out;
        for (auto m : steps) {  // temporal: t -> t + m/(2N)
            const double d = static_cast<double>(m) / (2.0 * N);
            const double dh = sc * (F.at(end.col + m, end.row + m) - base - c.p * 2.0 * static_cast<double>(m));
            out.push_back(std::fabs(dh) / std::cbrt(d));
        }
        for (auto m : steps) {  // spatial: y -> y + m q^2 N^(-2/3)
            const double d = c.lattice_x(N, m);
            const double dh = sc * (F.at(end.col + m, end.row) - base - c.p * static_cast<double>(m));
            out.push_back(std::fabs(dh) / std::cbrt(d));
        }
        return out;
    }, options);

    json per = json::array();
    bool flag = false;
    for (auto N : config.sizes) {
        json variants = json::object();
        for (int v = 0; v < 2; ++v) {
            json rows = json::array();
            double q_hi = 0, q_lo = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < steps.size(); ++j) {
                auto col = rep.results.column(N, static_cast<std::size_t>(v) * steps.size() + j);
                const double d = v == 0 ? static_cast<double>(steps[j]) / (2.0 * N) : c.lattice_x(N, steps[j]);
                const double q90 = quantile(col, 0.9), q99 = quantile(col, 0.99);
                q_hi = std::max(q_hi, q99);
                q_lo = std::min(q_lo, q99);
                const auto exceed = std::count_if(col.begin(), col.end(), [&](double x) { return x > q99; });
                rows.push_back(json{{"steps", steps[j]}, {"d", d}, {"q90", q90}, {"q99", q99}, {"exceedances_q99", exceed}});
            }
            const bool raised = !(q_lo > 0 && q_hi <= 3.0 * q_lo);
            flag = flag || raised;
            variants[v == 0 ? "temporal" : "spatial"] = json{{"rows", rows}, {"q99_spread", q_lo > 0 ? q_hi / q_lo : 0.0}, {"flatness_flag", raised}};
        }
        per.push_back(json{{"N", N}, {"t", t}, {"y", y}, {"variants", variants}});
    }
    rep.body["per_size"] = std::move(per);
    rep.body["flatness_flag"] = flag;
    return rep;
}

StudyReport point_to_line_gap_study(const ExperimentConfig& config, const RunOptions& options) {
    auto as = param_or(config.params, "a", std::vector<std::int64_t>{4, 16, 64});
    const double y = param_or(config.params, "y", 0.0);
    if (std::fabs(y) > 2) throw ParameterError("point-to-line study keeps |y| <= 2");
    if (as.empty()) throw ParameterError("a grid must be non-empty");
    for (auto a : as)
        if (a < 0) throw DomainError("segment half-widths must be non-negative");
    const std::int64_t a_max = *std::max_element(as.begin(), as.end());
    const double theta = config.theta;

    StudyReport rep;
    rep.results = run_replicates(config, [&](std::int64_t N, RandomStream& rng) {
        const auto off = static_cast<std::int64_t>(std::llround(y * pow23(N)));
        const Point o{1, 1};
        const Point w{N + off, N - off};
        if (w.row - a_max < o.row || w.col - a_max < o.col) throw DomainError("segment around w leaves the quadrant above o");
        const Point mid{(o.col + w.col) / 2, (o.row + w.row) / 2};
        if (!(reachable(o, mid) && reachable(mid, w))) throw DomainError("midpoint is not between o and w");
        const Point corner{w.col + a_max, w.row + a_max};
        Environment env = sample_environment(ThetaParam(theta), Window::rect(corner.col, corner.row), rng.next_u64());
        LogGrid F = forward_table(env, o, corner);
        LogGrid B = backward_table(env, w, o);
        const double Fw = F.at(w.col, w.row);
        std::vector<double> out;
        for (auto a : as) {
            std::vector<double> terms;
            for (Point x : antidiagonal_segment(w, a)) terms.push_back(F.at(x.col, x.row));
            out.push_back(log_sum_exp(terms) - Fw);
        }
        // log Z_{o,w}/d_o = LSE over the anti-diagonal through mid of log(Z_{o,x}/d_o) + log(Z_{x,w}/d_x).
        const double lo = env.at(o.col, o.row);
        std::vector<double> terms;
        double term_mid = kNegInf;
        const std::int64_t level = mid.col + mid.row;
        for (std::int64_t col = o.col; col <= w.col; ++col) {
            const Point x{col, level - col};
            if (!reachable(o, x) || !reachable(x, w)) continue;
            const double v = (F.at(x.col, x.row) - lo) + (B.at(x.col, x.row) - env.at(x.col, x.row));
            terms.push_back(v);
            if (x == mid) term_mid = v;
        }
        const double whole = log_sum_exp(terms);
        out.push_back(whole - term_mid);
        out.push_back(std::fabs(whole - (Fw - lo)));
        return out;
    }, options);

    json per = json::array();
    bool all_nonneg = true, trend_ok = true;
    for (auto N : config.sizes) {
        json rows = json::array();
        double prev_q99 = std::numeric_limits<double>::infinity();
        bool nonincreasing = true;
        for (std::size_t j = 0; j < as.size(); ++j) {
            auto gap = rep.results.column(N, j);
            const double mn = gap.empty() ? 0.0 : *std::min_element(gap.begin(), gap.end());
            all_nonneg = all_nonneg && mn >= 0;
            json row{{"a", as[j]}, {"min_gap", mn}, {"max_gap", gap.empty() ? 0.0 : *std::max_element(gap.begin(), gap.end())}};
            if (as[j] > 0) {
                std::vector<double> ratio;
                for (double g : gap) ratio.push_back(g / std::sqrt(static_cast<double>(as[j])));
                const double q99 = quantile(ratio, 0.99);
                row["q50"] = quantile(ratio, 0.5);
                row["q90"] = quantile(ratio, 0.9);
                row["q99"] = q99;
                if (q99 > prev_q99) nonincreasing = false;
                prev_q99 = q99;
            }
            rows.push_back(std::move(row));
        }
        trend_ok = trend_ok && nonincreasing;
        auto defect = rep.results.column(N, as.size());
        auto recompute = rep.results.column(N, as.size() + 1);
        const double scale = std::cbrt(static_cast<double>(N) / 2.0);
        std::vector<double> ratio;
        std::size_t violations = 0;
        for (double d : defect) {
            if (d < 0) ++violations;
            ratio.push_back(d / scale);
        }
        all_nonneg = all_nonneg && violations == 0;
        per.push_back(json{{"N", N},
                           {"gaps", rows},
                           {"q99_nonincreasing", nonincreasing},
                           {"midpoint_defect",
                            json{{"min", defect.empty() ? 0.0 : *std::min_element(defect.begin(), defect.end())},
                                 {"violations", violations},
                                 {"q50", quantile(ratio, 0.5)},
                                 {"q90", quantile(ratio, 0.9)},
                                 {"q99", quantile(ratio, 0.99)},
                                 {"max_recompute_gap", recompute.empty() ? 0.0 : *std::max_element(recompute.begin(), recompute.end())}}}});
    }
    rep.body["per_size"] = std::move(per);
    rep.body["all_nonnegative"] = all_nonneg;
    rep.body["q99_nonincreasing"] = trend_ok;
    return rep;
}

StudyReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    StudyReport rep;
    if (config.kind == "shape") rep = shape_study(config, options);
    else if (config.kind == "lln_direction") rep = lln_direction_study(config, options);
    else if (config.kind == "exponent") rep = fluctuation_exponent(config, options);
    else if (config.kind == "transversal") rep = transversal_study(config, options);
    else if (config.kind == "increment_tail") rep = increment_tail_study(config, options);
    else rep = point_to_line_gap_study(config, options);

    json head;
    head["kind"] = config.kind;
    head["version"] = version_string();
    head["config_hash"] = config_hash(config.to_json());
    head["seed"] = config.seed;
    head["config"] = config.to_json();
    head["constants"] = to_json(constants(config.theta));
    head["shape_form"] = shape_form_name(kActiveShapeForm);
    head["partial"] = rep.results.partial();
    head["failed_tasks"] = failed_tasks(rep.results);
    for (auto& [k, v] : rep.body.items()) head[k] = v;
    rep.body = std::move(head);
    return rep;
}

}  // namespace loggamma
