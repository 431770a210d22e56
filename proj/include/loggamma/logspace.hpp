#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace loggamma {

// Log of zero. Absorbing under log_add and propagates through sums.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename Real>
inline constexpr Real neg_inf_v = -std::numeric_limits<Real>::infinity();

// log(exp(a) + exp(b)). The result is never smaller than max(a, b).
template <typename Real>
inline Real log_add(Real a, Real b) {
    if (a < b) std::swap(a, b);
    if (b == neg_inf_v<Real>) return a;
    return a + std::log1p(std::exp(b - a));
}

// log(sum_i exp(v_i)); returns -inf for an empty span.
template <typename Real>
Real log_sum_exp(std::span<const Real> v) {
    Real m = neg_inf_v<Real>;
    for (Real x : v) m = std::max(m, x);
    if (m == neg_inf_v<Real>) return m;
    Real s = 0;
    for (Real x : v) s += std::exp(x - m);
    return m + std::log(s);
}

inline double log_sum_exp(std::span<const double> v) { return log_sum_exp<double>(v); }

// Gap measure used by every identity check: |a - b| / max(1, |a|, |b|).
// The unit floor keeps log-values close to zero from inflating the ratio.
inline double relative_gap(double a, double b) {
    if (a == b) return 0.0;
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) / scale;
}

}  // namespace loggamma
