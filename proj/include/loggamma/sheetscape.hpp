#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loggamma/env.hpp"
#include "loggamma/grsk.hpp"
#include "loggamma/polymer.hpp"
#include "loggamma/report.hpp"
#include "loggamma/scaling.hpp"

namespace loggamma {

struct SheetQuery {
    std::int64_t N = 1;
    double x = 0;
    double y = 0;
};

struct LandscapeQuery {
    std::int64_t N = 1;
    double x = 0;
    double s = 0;
    double y = 0;
    double t = 1;
};

// A single polymer free energy minus a linear drift: log Z[start -> end] - p * drift.
// Every sheet and landscape value routes through this.
struct FreeEnergyIndex {
    Point start;
    Point end;
    double drift = 0;
};

FreeEnergyIndex sheet_index(const ThetaConstants& c, const SheetQuery& q);
FreeEnergyIndex landscape_index(const ThetaConstants& c, const LandscapeQuery& q);

// Grid window needed to evaluate the index; columns and rows start at 1.
Window required_window(const FreeEnergyIndex& ix);

// Unscaled value; DomainError naming the required window if env is too small.
double unscaled_kernel(const LogGrid& env, double p, const FreeEnergyIndex& ix);

double sheet_unscaled(const LogGrid& env, const ThetaConstants& c, const SheetQuery& q);
double sheet_value(const LogGrid& env, const ThetaConstants& c, const SheetQuery& q);
double landscape_unscaled(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q);
double landscape_value(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q);

// exp(h(x,s;y,t)) = sum_c exp(h(., s; c, r) + h(c, r; ., t) + p) over the crossing
// column c from row floor(2Nr) to the next. Requires s < r < t and 2Nr an
// integer (DomainError otherwise). Also reports the max-plus bound
// 0 <= h - p - max_c(...) <= log(#terms).
IdentityReport verify_composition(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q, double r,
                                  double tol = 1e-10);

struct PathMeasure {
    int k = 0;
    double x = 0, y = 0;
    std::int64_t x_bar = 0, y_hat = 0;  // support [x_bar, y_hat]
    std::string route;                  // "components" or "raw"
    std::vector<double> log_mass;       // index z - x_bar
    std::vector<double> log_A;          // log sum_{i >= z}
    std::vector<double> log_B;          // log sum_{i <= z}
    double log_total = 0;               // log of the total mass, 0 in exact arithmetic

    std::int64_t size() const { return static_cast<std::int64_t>(log_mass.size()); }
    // log A(z) and log B(z) for any integer z: A is 1 left of the support
    // and 0 right of it, B the other way round.
    double A(std::int64_t z) const;
    double B(std::int64_t z) const;
    double log_A_at(std::int64_t z) const;
    double log_B_at(std::int64_t z) const;

    json to_json() const;
    std::string to_csv() const;  // z,log_mass,A,B
};

struct Components {
    double F = 0, G = 0, R = 0;  // scaled
    double F_bar = 0, G_bar = 0;  // unscaled
    std::int64_t x_bar = 0, z_hat = 0, y_hat = 0;
};

// Sheet-scale laboratory for one environment and size N: caches the 2N-row
// strip and its full line ensemble on columns 1..col_max.
class SheetLab {
public:
    SheetLab(const LogGrid& env, const ThetaConstants& c, std::int64_t N, std::int64_t col_max);

    const ThetaConstants& constants() const { return c_; }
    std::int64_t N() const { return N_; }
    std::int64_t col_max() const { return col_max_; }
    double scale() const { return c_.sheet_scale(N_); }
    const CurveFamily& curves() const { return wf_; }
    const LogGrid& strip_grid() const { return strip_; }

    std::int64_t x_bar(double x) const;
    std::int64_t y_hat(double y) const;

    // Unscaled sheet on lattice indices, by the polymer and by the line ensemble.
    double h_bar(std::int64_t xb, std::int64_t yh) const;
    double h_bar_ensemble(std::int64_t xb, std::int64_t yh) const;
    double h(double x, double y) const { return scale() * h_bar(x_bar(x), y_hat(y)); }

    // F-bar(x, z) for z in [x, z_max]; PreconditionError unless k < x.
    std::vector<double> F_bar_row(int k, std::int64_t x, std::int64_t z_max) const;
    // G-bar(z, y) for z in [z_min, y]; PreconditionError unless k <= z_min.
    std::vector<double> G_bar_row(int k, std::int64_t y, std::int64_t z_min) const;
    double F_bar(int k, std::int64_t x, std::int64_t z) const;
    double G_bar(int k, std::int64_t z, std::int64_t y) const;

    Components components(int k, double x, double z, double y) const;

    // Components route when k < x_bar, raw polymer split otherwise.
    PathMeasure measure(int k, std::int64_t xb, std::int64_t yh) const;
    PathMeasure measure(int k, double x, double y) const;

private:
    void require_column(std::int64_t col, const char* what) const;

    ThetaConstants c_;
    std::int64_t N_;
    std::int64_t col_max_;
    LogGrid strip_;
    CurveFamily wf_;
};

Components components_FGR(const LogGrid& env, const ThetaConstants& c, std::int64_t N, int k, double x, double z, double y);
PathMeasure path_measure(const LogGrid& env, const ThetaConstants& c, std::int64_t N, int k, double x, double y);

// Columns of the 2N-row strip needed for sheet queries up to y.
std::int64_t sheet_columns(const ThetaConstants& c, std::int64_t N, double y_max);

struct SandwichParams {
    std::int64_t N = 8;
    int k = 1;
    double x1 = 0, x2 = 0;  // F-part: 0 < x1 <= x2, evaluated at (y, z)
    double y = 0;
    double x = 0;  // G-part: evaluated at x with y1 <= y2
    double y1 = 0, y2 = 0;
    double z = 0;
};

// The four sandwich inequalities at one parameter tuple. PreconditionError
// names the failed hypothesis.
IdentityReport verify_sandwich(const SheetLab& lab, const SandwichParams& p, double slack = 1e-10);
IdentityReport verify_sandwich(const LogGrid& env, const ThetaConstants& c, const SandwichParams& p, double slack = 1e-10);

// Random admissible tuples drawn on the lattice of lab; spans are in lattice steps.
struct SheetSampleSpec {
    std::size_t count = 100;
    std::uint64_t seed = 0;
    int k = 1;
    std::int64_t x_span = 8;  // x_bar offsets above k
    std::int64_t y_span = 8;  // y_hat offsets above 2N
};

IdentityReport sample_sandwich(const SheetLab& lab, const SheetSampleSpec& spec, double slack = 1e-10);
IdentityReport sample_sheet_quadrangle(const SheetLab& lab, const SheetSampleSpec& spec, double slack = 1e-10);
// F-bar(x2,.) - F-bar(x1,.) nondecreasing on z >= x2; G-bar(., y2) - G-bar(., y1)
// nondecreasing on z <= y1.
IdentityReport sample_component_monotonicity(const SheetLab& lab, const SheetSampleSpec& spec, double slack = 1e-10);
// sum mu = 1 and A(z) + B(z - 1) = 1 at every z of sampled measures.
IdentityReport sample_measure_normalization(const SheetLab& lab, const SheetSampleSpec& spec, double tol = 1e-10);

}  // namespace loggamma
