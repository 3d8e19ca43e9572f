// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "netmimo/dof_analysis.hpp"
#include "netmimo/rng.hpp"

using namespace netmimo;

namespace {

bool has_vertex(const DofRegion& r, long long xn, long long xd, long long yn,
                long long yd) {
    const RationalPoint p{Rational(xn, xd), Rational(yn, yd)};
    return std::find(r.vertices_exact.begin(), r.vertices_exact.end(), p) !=
           r.vertices_exact.end();
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);

    CHECK(Rational::from_double(0.25) == Rational(1, 4));
    CHECK(Rational::from_double(0.75) == Rational(3, 4));
    CHECK(Rational::from_double(1.0) == Rational(1));
    CHECK(Rational::from_double(1.0 / 3.0) == Rational(1, 3));
    CHECK(Rational::from_double(0.2) == Rational(1, 5));
}

TEST_CASE("theoretical dof formulas") {
    CHECK(theoretical_dof(Scheme::Zf, QualityPair(1.0, 0.5)) == 1.0);
    CHECK(theoretical_dof(Scheme::Mat, QualityPair(1.0, 0.5)) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(theoretical_dof(Scheme::AmatApzf, QualityPair(1.0, 0.5)) == 2.0);
    CHECK(theoretical_dof(Scheme::AmatZf, QualityPair(1.0, 0.5)) ==
          doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(theoretical_dof(Scheme::ZfPerfect, QualityPair(1.0, 0.5)) == 2.0);
    CHECK(theoretical_dof(Scheme::Vertex, QualityPair(0.5, 0.25)) == 1.5);
}

TEST_CASE("theoretical dof monotonicity") {
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    double prev = -1.0;
    for (const double a1 : grid) {
        const double v = theoretical_dof(Scheme::AmatApzf, QualityPair(a1, 0.0));
        CHECK(v >= prev);
        prev = v;
        // Independent of alpha2.
        for (const double a2 : grid) {
            if (a2 > a1) continue;
            CHECK(theoretical_dof(Scheme::AmatApzf, QualityPair(a1, a2)) == v);
        }
    }
    prev = -1.0;
    for (const double a2 : grid) {
        const double v = theoretical_dof(Scheme::AmatZf, QualityPair(1.0, a2));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("dof region vertices at m = 0") {
    const DofRegion r = dof_region(QualityPair(0.0, 0.0));
    CHECK(r.vertices_exact.size() == 4);
    CHECK(has_vertex(r, 0, 1, 0, 1));
    CHECK(has_vertex(r, 1, 1, 0, 1));
    CHECK(has_vertex(r, 2, 3, 2, 3));
    CHECK(has_vertex(r, 0, 1, 1, 1));
}

TEST_CASE("dof region vertices at m = 0.5") {
    const DofRegion r = dof_region(QualityPair(0.5, 0.25));
    CHECK(r.vertices_exact.size() == 6);
    CHECK(has_vertex(r, 1, 1, 1, 2));
    CHECK(has_vertex(r, 5, 6, 5, 6));
    CHECK(has_vertex(r, 1, 2, 1, 1));
    CHECK(has_vertex(r, 1, 1, 0, 1));
    CHECK(has_vertex(r, 0, 1, 1, 1));
    CHECK(has_vertex(r, 0, 1, 0, 1));
}

TEST_CASE("dof region at m = 1 is the unit square") {
    const DofRegion r = dof_region(QualityPair(1.0, 0.5));
    CHECK(r.vertices_exact.size() == 4);
    CHECK(has_vertex(r, 1, 1, 1, 1));
    CHECK(region_contains(r, {1.0, 1.0}, 1e-12));
}

TEST_CASE("region membership") {
    const DofRegion r = dof_region(QualityPair(0.5, 0.5));
    CHECK(region_contains(r, {0.0, 0.0}, 0.0));
    CHECK_FALSE(region_contains(r, {1.0, 1.0}, 1e-12));  // 2+1 > 2.5
    for (const auto& v : r.vertices)
        CHECK(region_contains(r, {v.d1, v.d2}, 1e-12));
    CHECK_THROWS_AS(region_contains(r, {0.0, 0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("symmetric scheme dof points lie inside the region") {
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (const double a1 : grid) {
        for (const double a2 : grid) {
            if (a2 > a1) continue;
            const QualityPair qual(a1, a2);
            const DofRegion r = dof_region(qual);
            for (Scheme s : {Scheme::Zf, Scheme::Mat, Scheme::AmatZf,
                             Scheme::AmatApzf}) {
                const double d = theoretical_dof(s, qual) / 2.0;
                CAPTURE(a1);
                CAPTURE(a2);
                CHECK(region_contains(r, {d, d}, 1e-12));
            }
        }
    }
}

TEST_CASE("regions nest as m grows") {
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (size_t i = 0; i < grid.size(); ++i) {
        const DofRegion small = dof_region(QualityPair(grid[i], grid[i]));
        for (size_t j = i; j < grid.size(); ++j) {
            const DofRegion big = dof_region(QualityPair(grid[j], grid[j]));
            for (const auto& v : small.vertices)
                CHECK(region_contains(big, {v.d1, v.d2}, 1e-12));
        }
    }
}

TEST_CASE("halfspace membership agrees with the enumerated vertex polygon") {
    RngStream rng(72, 0);
    for (const double m : {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0}) {
        const DofRegion r = dof_region(QualityPair(m, m));
        const auto& v = r.vertices;  // counterclockwise
        REQUIRE(v.size() >= 3);
        int checked = 0;
        for (int i = 0; checked < 2000 && i < 10000; ++i) {
            const DofPoint p{rng.uniform01() * 1.3, rng.uniform01() * 1.3};
            double slack = 1e9;
            for (const auto& h : r.halfspaces)
                slack = std::min(slack, h.b - (h.a1 * p.d1 + h.a2 * p.d2));
            if (std::abs(slack) < 1e-9) continue;  // too close to a boundary

            bool inside_polygon = true;
            for (size_t k = 0; k < v.size(); ++k) {
                const DofPoint& a = v[k];
                const DofPoint& b = v[(k + 1) % v.size()];
                const double turn = (b.d1 - a.d1) * (p.d2 - a.d2) -
                                    (b.d2 - a.d2) * (p.d1 - a.d1);
                if (turn < 0.0) {
                    inside_polygon = false;
                    break;
                }
            }
            CHECK(inside_polygon == (slack > 0.0));
            ++checked;
        }
        CHECK(checked >= 2000);
    }
}

TEST_CASE("slope estimator on exact curves") {
    RateCurve exact;
    for (double p : {1e2, 1e3, 1e4, 1e5})
        exact.points.push_back({p, 2.0 * std::log2(p), 0.0});
    CHECK(estimate_dof_slope(exact, 4) == doctest::Approx(2.0).epsilon(1e-12));

    RateCurve flat;
    for (double p : {1e2, 1e3, 1e4, 1e5})
        flat.points.push_back({p, 7.25, 0.0});
    CHECK(estimate_dof_slope(flat, 3) == doctest::Approx(0.0).scale(1.0));

    CHECK_THROWS_AS(estimate_dof_slope(exact, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_dof_slope(exact, 5), std::invalid_argument);

    RateCurve unsorted;
    unsorted.points.push_back({1e3, 1.0, 0.0});
    unsorted.points.push_back({1e2, 2.0, 0.0});
    CHECK_THROWS_AS(estimate_dof_slope(unsorted, 2), std::invalid_argument);
}

TEST_CASE("slope estimator recovers noisy synthetic slopes within 0.02") {
    RngStream rng(71, 0);
    for (const double d : {0.0, 1.0, 4.0 / 3.0, 5.0 / 3.0, 2.0}) {
        RateCurve curve;
        for (double snr = 20.0; snr <= 60.0; snr += 2.0) {
            const double p = std::pow(10.0, snr / 10.0);
            const double noise = 0.1 * rng.gaussian();
            curve.points.push_back({p, d * std::log2(p) + 3.1 + noise, 0.1});
        }
        const double est =
            estimate_dof_slope(curve, static_cast<int>(curve.points.size()));
        CHECK(std::abs(est - d) <= 0.02);
    }
}
