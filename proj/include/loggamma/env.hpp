#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "loggamma/logspace.hpp"

namespace loggamma {

// Rectangular index range [col_min, col_max] x [row_min, row_max], inclusive.
struct Window {
    std::int64_t col_min = 1;
    std::int64_t col_max = 1;
    std::int64_t row_min = 1;
    std::int64_t row_max = 1;

    static Window rect(std::int64_t cols, std::int64_t rows) { return {1, cols, 1, rows}; }

    bool valid() const { return col_min <= col_max && row_min <= row_max; }
    std::int64_t cols() const { return col_max - col_min + 1; }
    std::int64_t rows() const { return row_max - row_min + 1; }
    std::uint64_t cells() const;
    bool contains(std::int64_t c, std::int64_t r) const {
        return c >= col_min && c <= col_max && r >= row_min && r <= row_max;
    }
    bool operator==(const Window&) const = default;
};

// Upper bound on cells per grid; about 2 GiB of doubles.
inline constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 28;

struct ThetaParam {
    double theta = 1.0;
    ThetaParam() = default;
    explicit ThetaParam(double t);  // throws ParameterError unless t > 0
};

// Dense grid of log-weights indexed by (column, row). -inf marks a cell that
// no path may visit.
class LogGrid {
public:
    LogGrid() = default;
    explicit LogGrid(const Window& w, double fill = 0.0);

    const Window& window() const { return window_; }
    double at(std::int64_t c, std::int64_t r) const { return values_[index(c, r)]; }
    double& at(std::int64_t c, std::int64_t r) { return values_[index(c, r)]; }
    bool contains(std::int64_t c, std::int64_t r) const { return window_.contains(c, r); }
    // -inf outside the window or on masked cells.
    double get_or_masked(std::int64_t c, std::int64_t r) const {
        return window_.contains(c, r) ? values_[index(c, r)] : kNegInf;
    }

    // Row-major values, rows ascending, columns ascending within a row.
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    // d_{i,j} -> d_{j,i}.
    LogGrid transposed() const;

    bool operator==(const LogGrid& o) const;

private:
    std::size_t index(std::int64_t c, std::int64_t r) const {
        return static_cast<std::size_t>((r - window_.row_min) * window_.cols() + (c - window_.col_min));
    }

    Window window_;
    std::vector<double> values_;
};

// Sampled (or loaded) polymer environment. Values are log d_{i,j}.
class Environment : public LogGrid {
public:
    Environment() = default;
    Environment(ThetaParam theta, std::uint64_t seed, LogGrid grid)
        : LogGrid(std::move(grid)), theta_(theta), seed_(seed) {}

    double theta() const { return theta_.theta; }
    std::uint64_t seed() const { return seed_; }
    const LogGrid& grid() const { return *this; }

    bool operator==(const Environment& o) const;

private:
    ThetaParam theta_;
    std::uint64_t seed_ = 0;
};

// Cells are filled row by row from one stream seeded by `seed`.
Environment sample_environment(ThetaParam theta, const Window& window, std::uint64_t seed);

// (R_z d)_{i,j} = d_{z+1-i, n+1-j} on columns 1..z and rows 1..n.
Environment reverse_environment(const Environment& env, std::int64_t z, std::int64_t n);
LogGrid reverse_grid(const LogGrid& grid, std::int64_t z, std::int64_t n);

void save_environment(const Environment& env, const std::filesystem::path& path);
Environment load_environment(const std::filesystem::path& path);

inline constexpr std::uint32_t kEnvFormatVersion = 1;

}  // namespace loggamma
