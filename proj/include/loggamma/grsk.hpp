#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "loggamma/env.hpp"
#include "loggamma/polymer.hpp"
#include "loggamma/report.hpp"

namespace loggamma {

// Family of curves f_1..f_L on a strip of n lines. Curve i is stored on
// r_i..n_max with r_1 <= r_2 <= ...; the boundary value f_i(r_i - 1) is 0.
class CurveFamily {
public:
    CurveFamily() = default;
    CurveFamily(std::int64_t n_lines, std::vector<std::int64_t> starts, std::int64_t n_max,
                std::vector<std::vector<double>> values, std::uint64_t fingerprint = 0);

    std::int64_t n_lines() const { return n_lines_; }
    int curves() const { return static_cast<int>(starts_.size()); }
    std::int64_t start(int i) const { return starts_.at(static_cast<std::size_t>(i - 1)); }
    std::int64_t n_max() const { return n_max_; }
    std::uint64_t fingerprint() const { return fingerprint_; }

    // f_i(j); DomainError unless r_i - 1 <= j <= n_max.
    double value(int i, std::int64_t j) const;
    // f_i(j) - f_i(j - 1), the weight of cell (j, i).
    double increment(int i, std::int64_t j) const { return value(i, j) - value(i, j - 1); }

    // Cell weights of lines 1..L as a grid on columns 1..n_max, rows 1..L,
    // line i on row L + 1 - i; cells left of r_i are masked.
    LogGrid as_grid(int L) const;

private:
    std::int64_t n_lines_ = 0;
    std::vector<std::int64_t> starts_;
    std::int64_t n_max_ = 0;
    std::vector<std::vector<double>> values_;
    std::uint64_t fingerprint_ = 0;
};

// f_i(j) = sum_{c <= j} log d at (c, line i) of the strip of rows 1..n.
CurveFamily raw_curves(const LogGrid& env, std::int64_t n, std::int64_t n_max);

// Wf_i(j) = logdet(U_{n,i} -> H_i(j)) - logdet(U_{n,i-1} -> H_{i-1}(j)) for
// i <= l_max and i <= j <= n_max, built from the strip of rows 1..n by
// geometric RSK local moves (no determinants, no cancellation).
CurveFamily build_curves(const LogGrid& env, std::int64_t n, int l_max, std::int64_t n_max);

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

// Single path from (x, line_start) to (y, line_end) on the curves.
struct EnsembleQuery {
    std::int64_t x = 1;
    int line_start = 1;
    std::int64_t y = 1;
    int line_end = 1;
    double beta = 1.0;  // kInfiniteBeta selects the max-plus value
};

// value = max_plus + excess / beta with 0 <= excess <= log_count.
struct EnsembleValue {
    double value = kNegInf;
    double max_plus = kNegInf;
    double excess = 0;
    double log_count = kNegInf;  // log of the number of paths or tuples
};

EnsembleValue ensemble_free_energy(const CurveFamily& f, const EnsembleQuery& q);

// f[(z,1) reverse (w,k+1)] at inverse temperature beta; max-plus when beta is
// infinite. Here value = -(max_plus + excess/beta) where max_plus is the
// best exponent.
EnsembleValue ensemble_reverse_energy(const CurveFamily& f, std::int64_t z, std::int64_t w, int k, double beta = 1.0);

// beta = 1 tables. to_line: f[(x, line_start) -> (t, line_end)] for t in
// [x, y_max]. from_line: f[(t, line_start) -> (y, line_end)] for t in
// [x_min, y].
std::vector<double> ensemble_to_line(const CurveFamily& f, std::int64_t x, int line_start, int line_end, std::int64_t y_max);
std::vector<double> ensemble_from_line(const CurveFamily& f, std::int64_t y, int line_end, int line_start, std::int64_t x_min);

// Multipath free energy on the curves by treating them as a weighted grid.
// Points are (column, line).
double ensemble_multipath(const CurveFamily& f, std::span<const LinePoint> U, std::span<const LinePoint> V);

// Sub-grid of columns 1..cols and rows 1..rows.
LogGrid strip(const LogGrid& env, std::int64_t cols, std::int64_t rows);

inline constexpr double kIdentityTol = 1e-9;

// f[U -> V] = Wf[up(U) -> V] with U on line n, V on line 1 (columns given).
// `curves` may be supplied when already built for the strip.
IdentityReport verify_greene(const LogGrid& env, std::int64_t n, std::span<const std::int64_t> u_cols,
                             std::span<const std::int64_t> v_cols, const CurveFamily* curves = nullptr, double tol = kIdentityTol);

// sum_{i <= l} Wf_i(N) = log Z[U_{n,l} -> H_l(N)], the right side by brute
// force when `brute_force` is set, else by log_Z_multipath (the determinant,
// or the sweep when it cancels).
IdentityReport verify_product(const LogGrid& env, std::int64_t n, const CurveFamily& curves, int l, std::int64_t N,
                              bool brute_force, double tol = kIdentityTol);

struct Key1Result {
    IdentityReport main;           // the key identity
    IdentityReport concentration;  // saturation of the first k lines
    IdentityReport searrow;        // reverse-energy decomposition
    bool passed() const { return main.passed() && concentration.passed() && searrow.passed(); }
    IdentityReport combined() const;
};

// Requires 1 <= k <= n - 1, k < x and x < y - k + 1 (PreconditionError
// otherwise). Uses the strip of columns 1..y and rows 1..n.
Key1Result verify_key1(const LogGrid& env, std::int64_t n, std::int64_t x, std::int64_t y, int k, double tol = kIdentityTol);

// exp f[(x,l) -> (y,m)] = sum_{i=x}^{y} exp(f[(x,l) -> (i,k+1)] + f[(i,k) -> (y,m)]), m <= k < l.
IdentityReport verify_bisection(const CurveFamily& f, std::int64_t x, int l, std::int64_t y, int m, int k, double tol = kIdentityTol);

struct SampleSpec {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
};

// f[(x2,l)->(y1,m)] - f[(x1,l)->(y1,m)] <= f[(x2,l)->(y2,m)] - f[(x1,l)->(y2,m)]
// over random x1 <= x2 <= y1 <= y2 and lines l >= m.
IdentityReport verify_monotonicity(const CurveFamily& f, const SampleSpec& spec, double slack = 1e-11);

// log Z[(x1,line n)->(y2,line 1)] + log Z[(x2,n)->(y1,1)] <= log Z[(x2,n)->(y2,1)] + log Z[(x1,n)->(y1,1)].
IdentityReport verify_quadrangle(const LogGrid& env, std::int64_t n, std::int64_t n_max, const SampleSpec& spec,
                                 double slack = 1e-10);

// Affine covariance of the free energy and its reverse twin under
// g_i(x) = a1 f_i(a2 x + a3) + a4 x + a5_i on the lattice {(z - a3)/a2}.
struct AffineParams {
    double a1 = 1, a2 = 1, a3 = 0, a4 = 0;
    std::vector<double> a5;  // one per curve; missing entries are 0
};

struct AffineQuery {
    double x = 1;  // lattice coordinates; a2 x + a3 must be an integer
    int line_start = 1;
    double y = 1;
    int line_end = 1;
    double beta = 1.0;
    int reverse_k = -1;  // >= 0 also checks the reverse twin with this k
};

IdentityReport verify_affine(const CurveFamily& f, const AffineParams& a, const AffineQuery& q, double tol = 1e-10);

// The transformed family g on integer lattice indices z = a2 x + a3.
CurveFamily affine_family(const CurveFamily& f, const AffineParams& a);

}  // namespace loggamma
