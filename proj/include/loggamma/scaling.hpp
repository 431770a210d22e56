#pragma once

#include <cstdint>
#include <string>

namespace loggamma {

// Polygamma functions for x > 0; DomainError otherwise.
double digamma(double x);
double trigamma(double x);
double tetragamma(double x);  // second derivative of digamma

// g(z) = trigamma(theta - z) / trigamma(z), increasing from (0, theta) onto (0, inf).
double g_theta(double theta, double z);
double g_theta_inv(double theta, double x);

// h(x) = x digamma(g^{-1}(x)) + digamma(theta - g^{-1}(x)) and its derivative.
double h_theta(double theta, double x);
double h_theta_prime(double theta, double x);

// d(x) = (sum_n x/(n + g^{-1}(x))^3 + sum_n x/(n + theta - g^{-1}(x))^3)^(1/3)
// by direct summation with an Euler-Maclaurin tail.
double d_theta(double theta, double x);

struct ThetaConstants {
    double theta = 0;
    double psi_half = 0;  // digamma(theta / 2)
    double h1 = 0;        // h(1)
    double p = 0;         // -h(1)/2
    double sigma_p = 0;   // trigamma(theta/2)^(-1/2)
    double d1 = 0;        // d(1)
    double q = 0;         // 2^(-5/6) sigma_p / d(1)

    // 2^(-1/2) q sigma_p N^(-1/3): the prefactor of the scaled sheet.
    double sheet_scale(std::int64_t N) const;
    // m q^2 N^(-2/3): the real coordinate whose scaled column offset is m.
    double lattice_x(std::int64_t N, std::int64_t m) const;
};

ThetaConstants constants(double theta);

// Integer scalings of real coordinates at size N.
struct ScaledCoords {
    std::int64_t N = 0;
    std::int64_t x_bar = 0;  // floor(N^(2/3) x / q^2) + 1
    std::int64_t y_hat = 0;  // floor(N^(2/3) y / q^2) + 2N
    std::int64_t y_bar = 0;  // floor(N^(2/3) y / q^2) + 1
    std::int64_t t_check = 0;  // floor(2 N t)
};

// floor() of a product that lands within a few ulps of an integer snaps to
// that integer, so values produced by lattice_x map back exactly.
std::int64_t guarded_floor(double v);

std::int64_t scale_space(const ThetaConstants& c, std::int64_t N, double x);  // floor(N^(2/3) x / q^2)
std::int64_t scale_time(std::int64_t N, double t);                            // floor(2 N t)
ScaledCoords coord_maps(const ThetaConstants& c, std::int64_t N, double x, double y, double t);

// xi[rho] = (trigamma(rho), trigamma(theta - rho)) / (trigamma(rho) + trigamma(theta - rho)).
struct Direction {
    double xi1;
    double xi2;
};
Direction characteristic_direction(double theta, double rho);

// Three readings of the shape function Lambda(xi[rho]). All agree at
// rho = theta/2, where the value is -digamma(theta/2).
enum class ShapeForm {
    Printed,      // -xi1 digamma(theta - rho) - xi2 digamma(theta - rho)
    Symmetric,    // -xi1 digamma(rho) - xi2 digamma(theta - rho)
    Variational,  // -xi1 digamma(theta - rho) - xi2 digamma(rho)
};

// Form used by default; chosen by the off-diagonal law-of-large-numbers study.
inline constexpr ShapeForm kActiveShapeForm = ShapeForm::Variational;

const char* shape_form_name(ShapeForm f);
double shape(double theta, double rho, ShapeForm form = kActiveShapeForm);

// Lambda at a lattice direction (a, b) with a, b > 0: (a + b) Lambda(xi[rho])
// for the rho whose direction is proportional to (a, b).
double shape_at(double theta, double a, double b, ShapeForm form = kActiveShapeForm);
double rho_for_direction(double theta, double a, double b);

}  // namespace loggamma
