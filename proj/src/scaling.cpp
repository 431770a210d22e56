#include "loggamma/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "loggamma/error.hpp"

namespace loggamma {

namespace {

// B_2, B_4, ..., B_16.
constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
constexpr double kShift = 15.0;

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(fn) + " needs a finite positive argument, got " + std::to_string(x));
}

void require_open_interval(double theta, double z, const char* what) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    if (!(z > 0.0 && z < theta)) throw DomainError(std::string(what) + " must lie in (0, theta)");
}

}  // namespace

double digamma(double x) {
    require_positive(x, "digamma");
    double acc = 0.0;
    while (x < kShift) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double pow = inv2, series = 0.0;
    for (int k = 1; k <= 8; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k) * pow;
        pow *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    double acc = 0.0;
    while (x < kShift) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    double pow = inv2 * inv, series = 0.0;
    for (int k = 1; k <= 8; ++k) {
        series += kBernoulli[k - 1] * pow;
        pow *= inv2;
    }
    return acc + inv + 0.5 * inv2 + series;
}

double tetragamma(double x) {
    require_positive(x, "tetragamma");
    double acc = 0.0;
    while (x < kShift) {
        acc -= 2.0 / (x * x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    double pow = inv2 * inv2, series = 0.0;
    for (int k = 1; k <= 8; ++k) {
        series += (2.0 * k + 1.0) * kBernoulli[k - 1] * pow;
        pow *= inv2;
    }
    return acc - inv2 - inv2 * inv - series;
}

double g_theta(double theta, double z) {
    require_open_interval(theta, z, "z");
    return trigamma(theta - z) / trigamma(z);
}

double g_theta_inv(double theta, double x) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("g_theta_inv needs x > 0");
    if (x == 1.0) return 0.5 * theta;
    // Solve log g(z) = log x; log g is increasing and better scaled near the ends.
    const double target = std::log(x);
    auto f = [&](double z) { return std::log(trigamma(theta - z)) - std::log(trigamma(z)) - target; };
    double lo = 0.0, hi = theta;
    double z = 0.5 * theta;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * theta; ++it) {
        z = 0.5 * (lo + hi);
        double v = f(z);
        if (v == 0.0) break;
        (v < 0.0 ? lo : hi) = z;
    }
    for (int it = 0; it < 4; ++it) {
        double v = f(z);
        double d = -tetragamma(theta - z) / trigamma(theta - z) - tetragamma(z) / trigamma(z);
        double step = v / d;
        double nz = z - step;
        if (!(nz > lo && nz < hi)) break;
        z = nz;
        if (std::fabs(step) < 1e-17 * theta) break;
    }
    return z;
}

double h_theta(double theta, double x) {
    double z = g_theta_inv(theta, x);
    return x * digamma(z) + digamma(theta - z);
}

double h_theta_prime(double theta, double x) { return digamma(g_theta_inv(theta, x)); }

double d_theta(double theta, double x) {
    double z = g_theta_inv(theta, x);
    // sum_{n >= 0} (n + a)^-3: M explicit terms, then Euler-Maclaurin from M on.
    auto cube_sum = [](double a) {
        constexpr int M = 64;
        double s = 0.0;
        for (int n = M - 1; n >= 0; --n) {
            double t = n + a;
            s += 1.0 / (t * t * t);
        }
        double b = M + a, b2 = b * b;
        s += 0.5 / b2 + 0.5 / (b2 * b) + 0.25 / (b2 * b2) - 1.0 / (12.0 * b2 * b2 * b2);
        return s;
    };
    return std::cbrt(x * cube_sum(z) + x * cube_sum(theta - z));
}

double ThetaConstants::sheet_scale(std::int64_t N) const {
    return std::sqrt(0.5) * q * sigma_p / std::cbrt(static_cast<double>(N));
}

double ThetaConstants::lattice_x(std::int64_t N, std::int64_t m) const {
    double n23 = std::cbrt(static_cast<double>(N) * static_cast<double>(N));
    return static_cast<double>(m) * q * q / n23;
}

ThetaConstants constants(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw ParameterError("theta must be a finite positive number");
    ThetaConstants c;
    c.theta = theta;
    c.psi_half = digamma(0.5 * theta);
    c.h1 = h_theta(theta, 1.0);
    c.p = -0.5 * c.h1;
    c.sigma_p = 1.0 / std::sqrt(trigamma(0.5 * theta));
    c.d1 = d_theta(theta, 1.0);
    c.q = std::pow(2.0, -5.0 / 6.0) * c.sigma_p / c.d1;
    return c;
}

std::int64_t guarded_floor(double v) {
    double n = std::nearbyint(v);
    if (std::fabs(v - n) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(v))) return static_cast<std::int64_t>(n);
    return static_cast<std::int64_t>(std::floor(v));
}

std::int64_t scale_space(const ThetaConstants& c, std::int64_t N, double x) {
    double n23 = std::cbrt(static_cast<double>(N) * static_cast<double>(N));
    return guarded_floor(n23 * x / (c.q * c.q));
}

std::int64_t scale_time(std::int64_t N, double t) { return guarded_floor(2.0 * static_cast<double>(N) * t); }

ScaledCoords coord_maps(const ThetaConstants& c, std::int64_t N, double x, double y, double t) {
    if (N < 1) throw DomainError("N must be at least 1");
    ScaledCoords s;
    s.N = N;
    s.x_bar = scale_space(c, N, x) + 1;
    std::int64_t fy = scale_space(c, N, y);
    s.y_hat = fy + 2 * N;
    s.y_bar = fy + 1;
    s.t_check = scale_time(N, t);
    return s;
}

Direction characteristic_direction(double theta, double rho) {
    require_open_interval(theta, rho, "rho");
    double a = trigamma(rho), b = trigamma(theta - rho);
    return {a / (a + b), b / (a + b)};
}

const char* shape_form_name(ShapeForm f) {
    switch (f) {
        case ShapeForm::Printed: return "printed";
        case ShapeForm::Symmetric: return "symmetric";
        case ShapeForm::Variational: return "variational";
    }
    return "unknown";
}

double shape(double theta, double rho, ShapeForm form) {
    Direction xi = characteristic_direction(theta, rho);
    double pr = digamma(rho), pt = digamma(theta - rho);
    switch (form) {
        case ShapeForm::Printed: return -xi.xi1 * pt - xi.xi2 * pt;
        case ShapeForm::Symmetric: return -xi.xi1 * pr - xi.xi2 * pt;
        case ShapeForm::Variational: return -xi.xi1 * pt - xi.xi2 * pr;
    }
    throw DomainError("unknown shape form");
}

double rho_for_direction(double theta, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("direction components must be positive");
    // xi1 / xi2 = a / b  <=>  g(rho) = b / a.
    return g_theta_inv(theta, b / a);
}

double shape_at(double theta, double a, double b, ShapeForm form) {
    return (a + b) * shape(theta, rho_for_direction(theta, a, b), form);
}

}  // namespace loggamma
