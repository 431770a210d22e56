#include "loggamma/env.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "loggamma/error.hpp"
#include "loggamma/rng.hpp"

namespace loggamma {

std::uint64_t Window::cells() const {
    if (!valid()) return 0;
    auto c = static_cast<std::uint64_t>(cols());
    auto r = static_cast<std::uint64_t>(rows());
    if (c != 0 && r > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
    return c * r;
}

ThetaParam::ThetaParam(double t) : theta(t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("theta must be a finite positive number, got " + std::to_string(t));
}

LogGrid::LogGrid(const Window& w, double fill) : window_(w) {
    if (!w.valid()) throw DomainError("empty window");
    std::uint64_t n = w.cells();
    if (n > kMaxGridCells) throw CapacityError("window of " + std::to_string(n) + " cells exceeds limit of " + std::to_string(kMaxGridCells));
    values_.assign(static_cast<std::size_t>(n), fill);
}

LogGrid LogGrid::transposed() const {
    Window w{window_.row_min, window_.row_max, window_.col_min, window_.col_max};
    LogGrid out(w);
    for (auto r = window_.row_min; r <= window_.row_max; ++r)
        for (auto c = window_.col_min; c <= window_.col_max; ++c) out.at(r, c) = at(c, r);
    return out;
}

bool LogGrid::operator==(const LogGrid& o) const {
    if (!(window_ == o.window_) || values_.size() != o.values_.size()) return false;
    return values_.empty() || std::memcmp(values_.data(), o.values_.data(), values_.size() * sizeof(double)) == 0;
}

bool Environment::operator==(const Environment& o) const {
    return std::bit_cast<std::uint64_t>(theta()) == std::bit_cast<std::uint64_t>(o.theta()) && seed_ == o.seed_ &&
           LogGrid::operator==(o);
}

Environment sample_environment(ThetaParam theta, const Window& window, std::uint64_t seed) {
    if (!(theta.theta > 0.0)) throw ParameterError("theta must be positive");
    LogGrid grid(window);
    RandomStream rng(seed);
    for (double& v : grid.values()) v = rng.log_inverse_gamma(theta.theta);
    return Environment(theta, seed, std::move(grid));
}

LogGrid reverse_grid(const LogGrid& grid, std::int64_t z, std::int64_t n) {
    const Window& w = grid.window();
    if (z < 1 || n < 1 || !w.contains(1, 1) || !w.contains(z, n))
        throw DomainError("reverse needs columns 1.." + std::to_string(z) + " and rows 1.." + std::to_string(n) + " inside the window");
    LogGrid out(Window::rect(z, n));
    for (std::int64_t j = 1; j <= n; ++j)
        for (std::int64_t i = 1; i <= z; ++i) out.at(i, j) = grid.at(z + 1 - i, n + 1 - j);
    return out;
}

Environment reverse_environment(const Environment& env, std::int64_t z, std::int64_t n) {
    return Environment(ThetaParam(env.theta()), env.seed(), reverse_grid(env, z, n));
}

namespace {

constexpr char kMagic[8] = {'L', 'G', 'E', 'N', 'V', 0, 0, 0};

static_assert(std::endian::native == std::endian::little, "environment files are little-endian");

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw FormatError("truncated environment header");
    return v;
}

}  // namespace

void save_environment(const Environment& env, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    const Window& w = env.window();
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kEnvFormatVersion);
    put<std::uint32_t>(out, 0);
    put<double>(out, env.theta());
    put<std::int64_t>(out, w.col_min);
    put<std::int64_t>(out, w.col_max);
    put<std::int64_t>(out, w.row_min);
    put<std::int64_t>(out, w.row_max);
    put<std::uint64_t>(out, env.seed());
    auto v = env.values();
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!out) throw Error("write failed for " + path.string());
}

Environment load_environment(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw FormatError("not an environment file: " + path.string());
    auto version = take<std::uint32_t>(in);
    if (version != kEnvFormatVersion)
        throw VersionError("environment format version " + std::to_string(version) + " is not supported (expected " +
                           std::to_string(kEnvFormatVersion) + ")");
    (void)take<std::uint32_t>(in);
    double theta = take<double>(in);
    Window w;
    w.col_min = take<std::int64_t>(in);
    w.col_max = take<std::int64_t>(in);
    w.row_min = take<std::int64_t>(in);
    w.row_max = take<std::int64_t>(in);
    auto seed = take<std::uint64_t>(in);
    if (!w.valid()) throw FormatError("invalid window in header");
    if (!(theta > 0.0)) throw FormatError("invalid theta in header");
    if (w.cells() > kMaxGridCells) throw FormatError("window in header exceeds the grid limit");
    LogGrid grid(w);
    auto v = grid.values();
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double))) throw FormatError("truncated payload in " + path.string());
    if (in.peek() != std::ifstream::traits_type::eof()) throw FormatError("trailing bytes after payload in " + path.string());
    return Environment(ThetaParam(theta), seed, std::move(grid));
}

}  // namespace loggamma
