#include "loggamma/rng.hpp"

#include <cmath>
#include <limits>

#include "loggamma/error.hpp"

namespace loggamma {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL)));
}

double RandomStream::uniform() {
    // 53 random bits, shifted by half a step so 0 is never produced.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_ = true;
    return u * f;
}

double RandomStream::log_gamma_variate(double shape) {
    if (shape < 1.0) {
        // G(a) = G(a + 1) * U^(1/a); kept in logs because U^(1/a) underflows for tiny a.
        double lg = log_gamma_variate(shape + 1.0);
        return lg + std::log(uniform()) / shape;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
    }
}

double RandomStream::gamma(double shape) {
    if (!(shape > 0.0)) throw ParameterError("gamma shape must be positive");
    return std::exp(log_gamma_variate(shape));
}

double RandomStream::log_inverse_gamma(double theta) {
    if (!(theta > 0.0)) throw ParameterError("theta must be positive");
    return -log_gamma_variate(theta);
}

}  // namespace loggamma
