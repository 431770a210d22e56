#include <doctest.h>

#include <cmath>

#include "loggamma/env.hpp"
#include "loggamma/error.hpp"
#include "loggamma/grsk.hpp"
#include "oracles.hpp"

using namespace loggamma;

namespace {

LogGrid env_of(std::int64_t cols, std::int64_t rows, std::uint64_t seed, double theta = 1.0) {
    return sample_environment(ThetaParam(theta), Window::rect(cols, rows), seed).grid();
}

}  // namespace

TEST_CASE("curve family validates its layout") {
    CHECK_THROWS_AS(CurveFamily(2, {1, 2}, 3, {{0, 1, 2, 3}}), DomainError);
    CurveFamily f(2, {1, 2}, 3, {{5, 1, 2, 3}, {0, 1, 2}});
    CHECK(f.value(1, 0) == 0);  // boundary forced to zero
    CHECK(f.increment(1, 1) == 1);
    CHECK_THROWS_AS(f.value(2, 0), DomainError);
    LogGrid g = f.as_grid(2);
    CHECK(g.at(1, 1) == kNegInf);  // line 2 sits on row 1 and starts at column 2
    CHECK(g.at(2, 1) == 1);
    CHECK(g.at(1, 2) == 1);
}

TEST_CASE("top curve is the point-to-line free energy") {
    LogGrid g = env_of(7, 4, 21);
    CurveFamily wf = build_curves(g, 4, 3, 7);
    for (std::int64_t j = 1; j <= 7; ++j) CHECK(relative_gap(wf.value(1, j), log_Z_point(g, {1, 1}, {j, 4})) < 1e-12);
}

TEST_CASE("product identity against the transfer oracle") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(seed);
        LogGrid g = env_of(9, n, seed, 0.7);
        CurveFamily wf = build_curves(g, n, static_cast<int>(std::min<std::int64_t>(n, 4)), 9);
        for (int l = 1; l <= wf.curves(); ++l)
            for (std::int64_t N = l; N <= 9; ++N) {
                std::vector<Point> U, V;
                for (int i = 1; i <= l; ++i) U.push_back({i, 1});
                for (std::int64_t c = N - l + 1; c <= N; ++c) V.push_back({c, n});
                double lhs = 0;
                for (int i = 1; i <= l; ++i) lhs += wf.value(i, N);
                CAPTURE(l);
                CAPTURE(N);
                CHECK(relative_gap(lhs, oracle::transfer_multipath(strip(g, N, n), U, V)) < 1e-10);
            }
    }
}

TEST_CASE("product identity report, both right sides") {
    LogGrid g = env_of(6, 4, 3);
    CurveFamily wf = build_curves(g, 4, 3, 6);
    CHECK(verify_product(g, 4, wf, 3, 6, true).passed());
    CHECK(verify_product(g, 4, wf, 3, 6, false).passed());
    CHECK_THROWS_AS(verify_product(g, 4, wf, 4, 6, true), DomainError);
}

TEST_CASE("curves survive sizes where determinants cancel") {
    LogGrid g = env_of(40, 12, 5, 0.5);
    CurveFamily wf = build_curves(g, 12, 12, 40);
    for (int i = 1; i <= 12; ++i)
        for (std::int64_t j = wf.start(i); j <= 40; ++j) REQUIRE(std::isfinite(wf.value(i, j)));
    double lhs = 0;
    for (int i = 1; i <= 2; ++i) lhs += wf.value(i, 40);
    std::vector<Point> U{{1, 1}, {2, 1}}, V{{39, 12}, {40, 12}};
    CHECK(relative_gap(lhs, oracle::transfer_multipath(g, U, V)) < 1e-10);
}

TEST_CASE("ensemble free energy against path enumeration at every beta") {
    LogGrid g = env_of(7, 4, 12);
    CurveFamily wf = build_curves(g, 4, 4, 7);
    for (double beta : {1.0, 10.0, 1e3, 1e6, kInfiniteBeta}) {
        for (auto [x, l, y, m] : {std::tuple{4, 4, 7, 1}, std::tuple{2, 2, 6, 1}, std::tuple{3, 3, 7, 2}}) {
            CAPTURE(beta);
            CAPTURE(x);
            auto ref = oracle::enumerate_curve_paths(wf, x, l, y, m);
            EnsembleValue v = ensemble_free_energy(wf, {x, l, y, m, beta});
            CHECK(relative_gap(v.max_plus, ref.max) < 1e-13);
            CHECK(relative_gap(std::exp(v.log_count), ref.count) < 1e-12);
            CHECK(relative_gap(v.value, ref.free_energy(beta)) < 1e-12);
            CHECK(v.value - v.max_plus >= 0);
            if (!std::isinf(beta)) CHECK(v.value - v.max_plus <= v.log_count / beta);
        }
    }
}

TEST_CASE("reverse energy against tuple enumeration") {
    LogGrid g = env_of(9, 5, 13);
    CurveFamily wf = build_curves(g, 5, 5, 9);
    for (double beta : {1.0, 10.0, kInfiniteBeta})
        for (int k = 1; k <= 3; ++k) {
            auto ref = oracle::enumerate_reverse_tuples(wf, 4, 9, k);
            EnsembleValue v = ensemble_reverse_energy(wf, 4, 9, k, beta);
            CHECK(relative_gap(v.value, -ref.free_energy(beta)) < 1e-12);
            CHECK(relative_gap(std::exp(v.log_count), ref.count) < 1e-12);
        }
    CHECK_THROWS_AS(ensemble_reverse_energy(wf, 9, 9, 1), DomainError);
    CHECK_THROWS_AS(ensemble_reverse_energy(wf, 7, 9, 3), DomainError);
    CHECK_THROWS_AS(ensemble_free_energy(wf, {6, 5, 9, 1, 0.0}), ParameterError);
}

TEST_CASE("to_line and from_line tables") {
    LogGrid g = env_of(8, 4, 14);
    CurveFamily wf = build_curves(g, 4, 4, 8);
    auto to = ensemble_to_line(wf, 4, 4, 2, 8);
    for (std::int64_t t = 4; t <= 8; ++t)
        CHECK(relative_gap(to[static_cast<std::size_t>(t - 4)], ensemble_free_energy(wf, {4, 4, t, 2, 1.0}).value) < 1e-13);
    auto from = ensemble_from_line(wf, 8, 1, 3, 3);
    for (std::int64_t t = 3; t <= 8; ++t)
        CHECK(relative_gap(from[static_cast<std::size_t>(t - 3)], ensemble_free_energy(wf, {t, 3, 8, 1, 1.0}).value) < 1e-13);
}

TEST_CASE("Greene invariance") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::int64_t n = 3 + static_cast<std::int64_t>(seed % 3), cols = 8;
        LogGrid g = env_of(cols, n, seed, seed % 2 ? 1.0 : 2.0);
        std::vector<std::int64_t> u{1, 3}, v{6, 8};
        IdentityReport r = verify_greene(g, n, u, v);
        CHECK(r.passed());
        CHECK(r.rel_gap < 1e-10);
        std::vector<Point> U{{1, 1}, {3, 1}}, V{{6, n}, {8, n}};
        CHECK(relative_gap(r.lhs, oracle::transfer_multipath(strip(g, cols, n), U, V)) < 1e-10);
    }
}

TEST_CASE("key identity with its reverse construction") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LogGrid g = env_of(12, 5, seed);
        Key1Result r = verify_key1(g, 5, 3, 10, 2);
        CHECK(r.main.passed());
        CHECK(r.concentration.passed());
        CHECK(r.searrow.passed());
    }
    LogGrid g = env_of(12, 5, 1);
    CHECK_THROWS_AS(verify_key1(g, 5, 2, 10, 2), PreconditionError);
    CHECK_THROWS_AS(verify_key1(g, 5, 4, 5, 2), PreconditionError);
    CHECK_THROWS_AS(verify_key1(g, 5, 3, 10, 5), PreconditionError);
}

TEST_CASE("bisection over an intermediate line") {
    LogGrid g = env_of(10, 5, 31);
    CurveFamily wf = build_curves(g, 5, 5, 10);
    CHECK(verify_bisection(wf, 5, 5, 10, 1, 2).passed());
    CHECK(verify_bisection(wf, 3, 3, 9, 2, 2).passed());
}

TEST_CASE("sampled monotonicity and quadrangle inequalities") {
    LogGrid g = env_of(14, 6, 41);
    CurveFamily wf = build_curves(g, 6, 6, 14);
    IdentityReport m = verify_monotonicity(wf, {500, 1});
    CHECK(m.passed());
    IdentityReport q = verify_quadrangle(g, 6, 14, {500, 2});
    CHECK(q.passed());
}

TEST_CASE("affine covariance") {
    LogGrid g = env_of(12, 4, 51);
    CurveFamily wf = build_curves(g, 4, 4, 12);
    AffineParams a{2.0, 1.0, 0.0, 0.25, {0.0, 0.0, 0.0, 0.0}};
    CHECK(verify_affine(wf, a, {5, 4, 11, 1, 1.0, 2}).passed());
    CHECK(verify_affine(wf, a, {5, 3, 11, 1, 3.0, -1}).passed());
    AffineParams shifted{1.0, 2.0, 1.0, 0.0, {0.5, -0.25, 0.0, 0.0}};
    CHECK(verify_affine(wf, shifted, {2, 4, 5, 1, 1.0, -1}).passed());
    CHECK_THROWS_AS(verify_affine(wf, shifted, {2.25, 4, 5, 1, 1.0, -1}), DomainError);
    CHECK_THROWS_AS(affine_family(wf, {0.0, 1.0, 0.0, 0.0, {}}), ParameterError);
}

TEST_CASE("ensemble multipath reproduces the grid value") {
    LogGrid g = env_of(6, 4, 61);
    CurveFamily raw = raw_curves(g, 4, 6);
    std::vector<LinePoint> U{{1, 4}, {2, 4}}, V{{5, 1}, {6, 1}};
    std::vector<Point> Ug{{1, 1}, {2, 1}}, Vg{{5, 4}, {6, 4}};
    CHECK(relative_gap(ensemble_multipath(raw, U, V), oracle::transfer_multipath(g, Ug, Vg)) < 1e-12);
}
