#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "loggamma/env.hpp"

namespace loggamma {

// Lattice point in grid coordinates (column, row). Paths step right
// (column + 1) or up (row + 1).
struct Point {
    std::int64_t col = 0;
    std::int64_t row = 0;
    bool operator==(const Point&) const = default;
};

// Componentwise order: an up-right path from u to v exists in Z^2.
inline bool reachable(Point u, Point v) { return u.col <= v.col && u.row <= v.row; }

// Line-labelled point on a strip of n rows: line 1 is the top row (row n),
// line n the bottom row (row 1). Paths run from higher to lower lines.
struct LinePoint {
    std::int64_t col = 0;
    std::int64_t line = 0;
    bool operator==(const LinePoint&) const = default;
};

inline Point to_point(LinePoint p, std::int64_t n) { return {p.col, n + 1 - p.line}; }
inline LinePoint to_line_point(Point p, std::int64_t n) { return {p.col, n + 1 - p.row}; }

// log of the number of up-right paths from u to v (-inf if unreachable).
double log_path_count(Point u, Point v);

// log Z[u -> v]; -inf when v is not reachable from u.
double log_Z_point(const LogGrid& g, Point u, Point v);

// Table of log Z[u -> x] for x in the rectangle [u, corner].
LogGrid forward_table(const LogGrid& g, Point u, Point corner);
// Table of log Z[x -> v] for x in the rectangle [corner, v].
LogGrid backward_table(const LogGrid& g, Point v, Point corner);

// forward_table in extended precision; determinant entries are read from it.
class ExtendedTable {
public:
    ExtendedTable(const Window& w, std::vector<long double> v) : window_(w), values_(std::move(v)) {}
    const Window& window() const { return window_; }
    long double at(Point x) const {
        if (!window_.contains(x.col, x.row)) return -std::numeric_limits<long double>::infinity();
        return values_[static_cast<std::size_t>((x.row - window_.row_min) * window_.cols() + (x.col - window_.col_min))];
    }

private:
    Window window_;
    std::vector<long double> values_;
};

ExtendedTable forward_table_extended(const LogGrid& g, Point u, Point corner);

// {w + (i, -i) : |i| <= a}, ordered by increasing i.
std::vector<Point> antidiagonal_segment(Point w, std::int64_t a);

double log_Z_point_to_set(const LogGrid& g, Point u, std::span<const Point> targets);
double log_Z_set_to_set(const LogGrid& g, std::span<const Point> sources, std::span<const Point> targets);
double log_Z_max(const LogGrid& g, std::span<const Point> sources, std::span<const Point> targets);

// Zero-temperature value: max over up-right paths of the summed log-weights.
double last_passage(const LogGrid& g, Point u, Point v);

// Multipath partition functions (vertex-disjoint paths, each source joined
// to some sink). Endpoint lists are sets; their order is irrelevant.
enum class MultipathMethod { Infeasible, Determinant, Sweep, BruteForce };
const char* method_name(MultipathMethod m);

// True iff some vertex-disjoint multipath joins U to V (checked by max-flow).
bool multipath_feasible(const LogGrid& g, std::span<const Point> U, std::span<const Point> V);

// The determinant route is valid when sources form a south-east chain on the
// lower-left boundary of the open cells and sinks form one on the upper-right
// boundary.
bool determinant_admissible(const LogGrid& g, std::span<const Point> U, std::span<const Point> V);

// Determinant of single-path values; throws DomainError if not admissible.
double log_Z_determinant(const LogGrid& g, std::span<const Point> U, std::span<const Point> V);

inline constexpr std::uint64_t kBruteForceStepBudget = 100'000'000;

// Exhaustive enumeration; throws CapacityError once `step_budget` DFS
// steps are exceeded.
double brute_force_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V,
                             std::uint64_t step_budget = kBruteForceStepBudget);

inline constexpr std::size_t kSweepStateBudget = 4'000'000;

// Exact and subtraction-free: sweeps anti-diagonals carrying the columns of
// the live paths. A path that reaches a sink ends there. CapacityError when
// one anti-diagonal holds more than `state_budget` states.
double sweep_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V,
                       std::size_t state_budget = kSweepStateBudget);

// Determinant when admissible and well conditioned, otherwise the sweep.
double log_Z_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V,
                       MultipathMethod* method = nullptr);

// Maximizer of log Z[o -> x] + log Z[x -> w] over x = o + (r + i, r - i).
struct AntidiagonalMax {
    Point point;
    std::int64_t index = 0;  // i
    double value = kNegInf;
    int ties = 0;  // other indices attaining the same value
};

AntidiagonalMax argmax_on_antidiagonal(const LogGrid& g, Point origin, std::int64_t r, Point w);

}  // namespace loggamma
