#pragma once

#include <cstdint>
#include <random>

namespace loggamma {

// Deterministic random stream. Every draw is produced by code in this
// library on top of std::mt19937_64, whose output sequence is fixed by the
// standard, so samples are bit-identical across platforms and compilers.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    // Independent stream for replicate/task `index` under a master seed.
    static RandomStream derive(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0, 1).
    double uniform();

    // Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Standard normal via the Marsaglia polar method.
    double normal();

    // Gamma(shape, 1). Marsaglia-Tsang squeeze/rejection for shape >= 1;
    // shapes below one are boosted to shape + 1 and corrected by U^(1/shape).
    double gamma(double shape);

    // log of an inverse-gamma(theta) variate, i.e. -log G with G ~ Gamma(theta, 1).
    // Computed in log form so the boost correction never underflows.
    double log_inverse_gamma(double theta);

private:
    double log_gamma_variate(double shape);

    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace loggamma
