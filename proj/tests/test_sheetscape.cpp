#include <doctest.h>

#include <cmath>

#include "loggamma/env.hpp"
#include "loggamma/error.hpp"
#include "loggamma/sheetscape.hpp"

using namespace loggamma;

namespace {

LogGrid env_of(std::int64_t cols, std::int64_t rows, std::uint64_t seed, double theta = 1.0) {
    return sample_environment(ThetaParam(theta), Window::rect(cols, rows), seed).grid();
}

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

TEST_CASE("sheet and landscape indices") {
    const ThetaConstants c = constants(1.0);
    FreeEnergyIndex s = sheet_index(c, {8, 0.0, 0.0});
    CHECK(s.start == Point{1, 1});
    CHECK(s.end == Point{16, 16});
    CHECK(s.drift == 31);
    FreeEnergyIndex l = landscape_index(c, {8, 0.0, 0.0, 0.0, 1.0});
    CHECK(l.start == Point{2, 1});
    CHECK(l.end == Point{17, 16});
    CHECK(l.drift == 32);
    const double x = c.lattice_x(8, 3);
    FreeEnergyIndex l2 = landscape_index(c, {8, x, 0.25, x, 0.75});
    CHECK(l2.start == Point{4 + 4 + 1, 5});
    CHECK(l2.end == Point{4 + 12, 12});
    CHECK_THROWS_AS(landscape_index(c, {8, 0, 1, 0, 1}), DomainError);
}

TEST_CASE("all-ones sheet counts paths") {
    const ThetaConstants c = constants(2.0);
    const std::int64_t N = 6;
    LogGrid ones(Window::rect(30, 2 * N), 0.0);
    for (std::int64_t mx : {0, 2, 5})
        for (std::int64_t my : {0, 3, 9}) {
            SheetQuery q{N, c.lattice_x(N, mx), c.lattice_x(N, my)};
            FreeEnergyIndex ix = sheet_index(c, q);
            const double cols = static_cast<double>(ix.end.col - ix.start.col);
            const double expect = log_binom(cols + 2 * N - 1, 2 * N - 1) - c.p * ix.drift;
            if (ix.end.col < ix.start.col) continue;
            CHECK(relative_gap(sheet_unscaled(ones, c, q), expect) < 1e-13);
            CHECK(relative_gap(sheet_value(ones, c, q), c.sheet_scale(N) * expect) < 1e-13);
        }
}

TEST_CASE("kernel names the missing window") {
    const ThetaConstants c = constants(1.0);
    LogGrid g = env_of(10, 10, 1);
    try {
        sheet_unscaled(g, c, {8, 0.0, 0.0});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("columns 1..16") != std::string::npos);
    }
}

TEST_CASE("sheet through the polymer and through the ensemble agree") {
    const ThetaConstants c = constants(1.0);
    const std::int64_t N = 5;
    LogGrid g = env_of(20, 2 * N, 2);
    SheetLab lab(g, c, N, 20);
    for (std::int64_t xb : {1, 3, 7, 12})
        for (std::int64_t yh : {10, 14, 20}) {
            if (yh < xb) continue;
            CHECK(relative_gap(lab.h_bar(xb, yh), lab.h_bar_ensemble(xb, yh)) < 1e-10);
        }
    CHECK_THROWS_AS(lab.h_bar(1, 21), DomainError);
}

TEST_CASE("composition across an intermediate time") {
    const ThetaConstants c = constants(1.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::int64_t N = 8;
        LandscapeQuery q{N, c.lattice_x(N, 2), 0.0, c.lattice_x(N, 5), 1.0};
        LogGrid g = env_of(40, 2 * N, seed);
        for (double r : {1.0 / 16, 0.5, 15.0 / 16}) {
            IdentityReport rep = verify_composition(g, c, q, r);
            CHECK(rep.passed());
            CHECK(rep.rel_gap < 1e-12);
        }
        CHECK_THROWS_AS(verify_composition(g, c, q, 0.51), DomainError);
        CHECK_THROWS_AS(verify_composition(g, c, q, 1.0), DomainError);
    }
}

TEST_CASE("path measure sums to one and its tails are complementary") {
    const ThetaConstants c = constants(1.0);
    const std::int64_t N = 6;
    LogGrid g = env_of(24, 2 * N, 3);
    SheetLab lab(g, c, N, 24);
    for (int k : {1, 2, 5, 8}) {
        for (std::int64_t xb : {3, 6}) {
            PathMeasure mu = lab.measure(k, xb, std::int64_t{20});
            CHECK(mu.route == (k < xb && k <= N - 1 ? "components" : "raw"));
            CHECK(std::fabs(mu.log_total) < 1e-10);
            for (std::int64_t z = mu.x_bar - 1; z <= mu.y_hat + 1; ++z) CHECK(std::fabs(mu.A(z) + mu.B(z - 1) - 1.0) < 1e-10);
            CHECK(std::fabs(mu.A(mu.x_bar - 1) - 1.0) < 1e-10);
            CHECK(std::fabs(mu.B(mu.y_hat + 1) - 1.0) < 1e-10);
            CHECK(mu.A(mu.y_hat + 1) == 0.0);
        }
    }
    PathMeasure mu = lab.measure(2, std::int64_t{4}, std::int64_t{18});
    const std::string csv = mu.to_csv();
    CHECK(csv.rfind("z,log_mass,A,B\n", 0) == 0);
    json j = mu.to_json();
    CHECK(j["route"] == "components");
    CHECK(j.contains("log_mass"));
}

TEST_CASE("components factor the path measure") {
    const ThetaConstants c = constants(1.0);
    const std::int64_t N = 6;
    LogGrid g = env_of(24, 2 * N, 4);
    SheetLab lab(g, c, N, 24);
    const int k = 2;
    const std::int64_t xb = 4, yh = 19;
    PathMeasure mu = lab.measure(k, xb, yh);
    const double hb = lab.h_bar(xb, yh);
    for (std::int64_t z = xb; z <= yh; ++z)
        CHECK(std::fabs(mu.log_mass[static_cast<std::size_t>(z - xb)] - (-hb + lab.F_bar(k, xb, z) + lab.G_bar(k, z, yh))) < 1e-10);

    Components comp = lab.components(k, c.lattice_x(N, 3), c.lattice_x(N, 2), c.lattice_x(N, 6));
    CHECK(comp.x_bar == 4);
    CHECK(comp.z_hat == 2 * N + 2);
    CHECK(comp.F == doctest::Approx(lab.scale() * comp.F_bar));
    CHECK_THROWS_AS(lab.F_bar(4, 4, 10), PreconditionError);
    CHECK_THROWS_AS(lab.G_bar(k, 1, 12), PreconditionError);
}

TEST_CASE("sampled sheet inequalities") {
    const ThetaConstants c = constants(1.0);
    const std::int64_t N = 6;
    LogGrid g = env_of(2 * N + 8, 2 * N, 5);
    SheetLab lab(g, c, N, 2 * N + 8);
    for (int k : {1, 3}) {
        SheetSampleSpec spec{300, 9, k, 6, 8};
        CHECK(sample_sandwich(lab, spec).passed());
        CHECK(sample_sheet_quadrangle(lab, spec).passed());
        CHECK(sample_component_monotonicity(lab, spec).passed());
        CHECK(sample_measure_normalization(lab, spec).passed());
    }
    SandwichParams bad{N, 1, 0.5, 0.2, 0.3, 0.5, 0.1, 0.4, 0.2};
    CHECK_THROWS_AS(verify_sandwich(lab, bad), PreconditionError);
}

TEST_CASE("landscape increments are stationary in space") {
    // h(0, 0; y, 1) and h(x, 0; x + y, 1) have the same law.
    const ThetaConstants c = constants(1.0);
    const std::int64_t N = 6;
    const double x = c.lattice_x(N, 4), y = c.lattice_x(N, 3);
    const int M = 400;
    double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
    for (int i = 0; i < M; ++i) {
        LogGrid g = env_of(30, 2 * N, 1000 + static_cast<std::uint64_t>(i));
        const double a = landscape_value(g, c, {N, 0.0, 0.0, y, 1.0});
        const double b = landscape_value(g, c, {N, x, 0.0, x + y, 1.0});
        s1 += a;
        q1 += a * a;
        s2 += b;
        q2 += b * b;
    }
    const double m1 = s1 / M, m2 = s2 / M;
    const double v1 = q1 / M - m1 * m1, v2 = q2 / M - m2 * m2;
    // Same environment, overlapping paths: the independent-sample SE is conservative for a positively correlated pair.
    CHECK(std::fabs(m1 - m2) < 4 * std::sqrt((v1 + v2) / M));
    CHECK(v2 / v1 == doctest::Approx(1.0).epsilon(0.3));
}
