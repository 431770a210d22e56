#pragma once

#include <cstddef>
#include <span>

namespace loggamma {

// Determinant of exp(L) for a k x k matrix L of log-entries (row-major,
// -inf allowed), returned as sign and log-magnitude.
struct SignedLogDet {
    long double log_abs;
    int sign;  // -1, 0 or +1
};

// Up to this size the determinant is a signed log-sum-exp over all k!
// permutation terms; larger matrices use row-scaled LU with partial pivoting.
inline constexpr std::size_t kLaplaceMaxOrder = 6;

// Laplace route flags cancellation when the positive and negative term
// masses agree to within this relative amount.
inline constexpr long double kCancellationThreshold = 1e-6L;

// LU route flags cancellation when |det| falls below this fraction of the
// Hadamard bound.
inline constexpr long double kLuRatioThreshold = 1e-6L;

SignedLogDet signed_log_det(std::span<const long double> log_entries, std::size_t k);

// log det exp(L) for matrices whose determinant is positive in exact
// arithmetic. Throws ConditioningError if the computed value is not
// safely positive.
long double log_det_positive(std::span<const long double> log_entries, std::size_t k);

}  // namespace loggamma
