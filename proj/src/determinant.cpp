#include "loggamma/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "loggamma/error.hpp"
#include "loggamma/logspace.hpp"

namespace loggamma {

namespace {

constexpr long double kNegInfL = neg_inf_v<long double>;

struct Masses {
    long double pos = kNegInfL;
    long double neg = kNegInfL;
};

Masses laplace_masses(std::span<const long double> L, std::size_t k) {
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Masses m;
    do {
        long double term = 0;
        bool zero = false;
        for (std::size_t i = 0; i < k; ++i) {
            long double e = L[i * k + perm[i]];
            if (e == kNegInfL) {
                zero = true;
                break;
            }
            term += e;
        }
        if (zero) continue;
        int inv = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
        if (inv % 2 == 0)
            m.pos = log_add(m.pos, term);
        else
            m.neg = log_add(m.neg, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return m;
}

SignedLogDet lu_log_det(std::span<const long double> L, std::size_t k) {
    std::vector<long double> a(k * k);
    long double offset = 0;
    for (std::size_t i = 0; i < k; ++i) {
        long double rmax = kNegInfL;
        for (std::size_t j = 0; j < k; ++j) rmax = std::max(rmax, L[i * k + j]);
        if (rmax == kNegInfL) return {kNegInfL, 0};
        offset += rmax;
        for (std::size_t j = 0; j < k; ++j) a[i * k + j] = std::exp(L[i * k + j] - rmax);
    }
    int sign = 1;
    long double log_abs = offset;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::fabs(a[r * k + c]) > std::fabs(a[piv * k + c])) piv = r;
        if (a[piv * k + c] == 0) return {kNegInfL, 0};
        if (piv != c) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
            sign = -sign;
        }
        long double p = a[c * k + c];
        if (p < 0) sign = -sign;
        log_abs += std::log(std::fabs(p));
        for (std::size_t r = c + 1; r < k; ++r) {
            long double f = a[r * k + c] / p;
            if (f == 0) continue;
            for (std::size_t j = c + 1; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
    }
    return {log_abs, sign};
}

// log of the Hadamard bound prod_i ||row_i||_2 on |det exp(L)|.
long double log_hadamard(std::span<const long double> L, std::size_t k) {
    long double total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        long double rmax = kNegInfL;
        for (std::size_t j = 0; j < k; ++j) rmax = std::max(rmax, L[i * k + j]);
        if (rmax == kNegInfL) return kNegInfL;
        long double s = 0;
        for (std::size_t j = 0; j < k; ++j) s += std::exp(2 * (L[i * k + j] - rmax));
        total += rmax + 0.5L * std::log(s);
    }
    return total;
}

}  // namespace

SignedLogDet signed_log_det(std::span<const long double> L, std::size_t k) {
    if (L.size() != k * k) throw DomainError("determinant input is not k x k");
    if (k == 0) return {0.0L, 1};
    if (k > kLaplaceMaxOrder) return lu_log_det(L, k);
    Masses m = laplace_masses(L, k);
    if (m.pos == m.neg) return {kNegInfL, 0};
    if (m.pos > m.neg) return {m.pos + std::log1p(-std::exp(m.neg - m.pos)), 1};
    return {m.neg + std::log1p(-std::exp(m.pos - m.neg)), -1};
}

long double log_det_positive(std::span<const long double> L, std::size_t k) {
    if (L.size() != k * k) throw DomainError("determinant input is not k x k");
    if (k == 0) return 0.0L;
    if (k > kLaplaceMaxOrder) {
        SignedLogDet d = lu_log_det(L, k);
        if (d.sign <= 0) throw ConditioningError("LU determinant of order " + std::to_string(k) + " is not positive");
        // A determinant far below the Hadamard bound has lost its digits to cancellation.
        const long double ratio = std::exp(d.log_abs - log_hadamard(L, k));
        if (!(ratio > kLuRatioThreshold))
            throw ConditioningError("LU determinant of order " + std::to_string(k) + " is " +
                                    std::to_string(static_cast<double>(ratio)) + " of its Hadamard bound");
        return d.log_abs;
    }
    Masses m = laplace_masses(L, k);
    if (m.pos == kNegInfL) throw ConditioningError("determinant has no positive terms");
    if (m.neg == kNegInfL) return m.pos;
    // gap = 1 - neg/pos; too small and the difference carries no digits.
    long double gap = -std::expm1(m.neg - m.pos);
    if (!(gap > kCancellationThreshold))
        throw ConditioningError("determinant of order " + std::to_string(k) + " cancels: positive and negative masses agree to " +
                                std::to_string(static_cast<double>(gap)));
    return m.pos + std::log(gap);
}

}  // namespace loggamma
