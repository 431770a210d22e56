#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "loggamma/report.hpp"
#include "loggamma/rng.hpp"

namespace loggamma {

// Kinds: shape, lln_direction, exponent, transversal, increment_tail, point_to_line.
struct ExperimentConfig {
    std::string kind = "shape";
    double theta = 1.0;
    std::vector<std::int64_t> sizes;
    std::size_t replicates = 100;
    std::uint64_t seed = 0;
    json params = json::object();

    // ParameterError on a malformed or invalid config.
    static ExperimentConfig from_json(const json& j);
    json to_json() const;
    void validate() const;
};

struct ReplicateRecord {
    std::int64_t size = 0;
    std::size_t replicate = 0;
    bool ok = true;
    std::string error;  // set when the task failed
    std::vector<double> values;
};

struct ReplicateResults {
    std::vector<ReplicateRecord> records;  // size-major, replicate-minor
    std::size_t failed = 0;
    double wall_seconds = 0;  // not part of any report

    bool partial() const { return failed > 0; }
    // Column j of the successful records of one size.
    std::vector<double> column(std::int64_t size, std::size_t j) const;
};

// Observables of one replicate, drawn from its own stream.
using ReplicateFn = std::function<std::vector<double>(std::int64_t size, RandomStream& rng)>;

struct RunOptions {
    unsigned workers = 0;             // 0: LOGGAMMA_THREADS, else hardware concurrency
    std::vector<std::size_t> order;   // optional task permutation; results do not depend on it
};

unsigned default_workers();

// Stream of replicate r at a given size; independent of the size list and of scheduling.
RandomStream replicate_stream(std::uint64_t seed, std::int64_t size, std::size_t replicate);

// Every (size, replicate) task runs on its own stream; an Error thrown by one
// task marks that record failed and leaves the others untouched.
ReplicateResults run_replicates(const ExperimentConfig& config, const ReplicateFn& fn, const RunOptions& options = {});

struct Summary {
    std::size_t n = 0;
    double mean = 0, sd = 0, se = 0;
    double kurtosis = 0;  // m4 / m2^2
};

Summary summarize(std::span<const double> v);

// Midpoint interpolation: the i-th order statistic (0-based) sits at (i + 0.5)/n.
double quantile(std::vector<double> v, double p);

struct FitPoint {
    double x = 0, y = 0, y_se = 0;
};

struct ExponentFit {
    double slope = 0, intercept = 0, slope_se = 0;
    std::vector<FitPoint> points;
    std::vector<double> residuals;
    json to_json() const;
};

// Ordinary least squares of y on x; slope_se propagates the per-point y_se.
ExponentFit fit_ols(std::vector<FitPoint> points);

// log Z[(1,1) -> (cols, rows)] for an environment drawn cell by cell in the
// order of sample_environment, without storing it. `fixed_path` is the
// log-weight of the path along row 1 and then column `cols`.
struct StreamedValues {
    double log_Z = 0;
    double fixed_path = 0;
};
StreamedValues streamed_point_to_point(double theta, std::int64_t cols, std::int64_t rows, RandomStream& rng,
                                       bool all_ones = false);

struct StudyReport {
    json body;
    ReplicateResults results;
};

StudyReport shape_study(const ExperimentConfig& config, const RunOptions& options = {});
StudyReport lln_direction_study(const ExperimentConfig& config, const RunOptions& options = {});
StudyReport fluctuation_exponent(const ExperimentConfig& config, const RunOptions& options = {});
StudyReport transversal_study(const ExperimentConfig& config, const RunOptions& options = {});
StudyReport increment_tail_study(const ExperimentConfig& config, const RunOptions& options = {});
StudyReport point_to_line_gap_study(const ExperimentConfig& config, const RunOptions& options = {});

// Dispatch on config.kind; the body carries version, config and its hash.
StudyReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace loggamma
