// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "netmimo/converse_oracle.hpp"
#include "netmimo/dof_analysis.hpp"

using namespace netmimo;

TEST_CASE("log ratio inequality") {
    CHECK(log_ratio_inequality_check(1.0, 1.0));
    CHECK(log_ratio_inequality_check(0.0, 5.0));
    CHECK_THROWS_AS(log_ratio_inequality_check(-1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(log_ratio_inequality_check(1.0, 0.0),
                    std::invalid_argument);

    RngStream rng(81, 0);
    int failures = 0;
    for (int i = 0; i < 1000000; ++i) {
        const double a = rng.uniform01() * 1e6;
        const double b = rng.uniform01() * 1e6;
        if (!log_ratio_inequality_check(a, b)) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("candidate covariance reconstruction") {
    const CovarianceCandidate c{0.7, 2.1, 3.0, 1.5};
    const Mat2c k = c.matrix();
    CHECK((k - k.adjoint()).norm() < 1e-12);
    CHECK(std::abs(std::real(k.trace()) - 4.5) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat2c> es(k);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("probe validates its inputs") {
    RngStream rng(82, 0);
    const ConverseGridSpec tiny{4, 8, 8, 8};
    CHECK_THROWS_AS(
        probe_weighted_diff(QualityPair(1.0, 0.5), 100.0, tiny, 1000, rng),
        std::invalid_argument);
    const ConverseGridSpec ok{8, 8, 8, 8};
    CHECK_THROWS_AS(
        probe_weighted_diff(QualityPair(1.0, 0.5), 100.0, ok, 10, rng),
        std::invalid_argument);
    CHECK_THROWS_AS(
        probe_weighted_diff(QualityPair(1.0, 0.5), 0.5, ok, 1000, rng),
        std::invalid_argument);
}

TEST_CASE("probe at unit power stays within a constant") {
    const ConverseGridSpec grid{8, 8, 8, 8};
    for (int d = 0; d < 5; ++d) {
        RngStream rng(83, d);
        const BoundProbeResult r =
            probe_weighted_diff(QualityPair(1.0, 0.5), 1.0, grid, 1000, rng);
        CHECK(std::abs(r.diff_value_bits) <= 4.0);
    }
}

TEST_CASE("probed maximum dominates the isotropic half-trace candidate") {
    const ConverseGridSpec grid{8, 8, 8, 8};
    for (int d = 0; d < 5; ++d) {
        RngStream rng(84, d);
        const BoundProbeResult r = probe_weighted_diff(QualityPair(1.0, 0.5),
                                                       1e4, grid, 1000, rng);
        CHECK(r.diff_value_bits >= r.diff_at_half_trace_identity - 1e-9);
        CHECK(r.argmax.lambda1 + r.argmax.lambda2 <= 1e4 * (1.0 + 1e-12));
        CHECK(r.mc_stderr >= 0.0);
    }
}

TEST_CASE("grid refinement can only raise the maximum") {
    const ConverseGridSpec coarse{8, 8, 8, 8};
    const ConverseGridSpec fine{16, 16, 16, 16};
    for (int d = 0; d < 3; ++d) {
        RngStream rng_a(85, d), rng_b(85, d);
        const BoundProbeResult a = probe_weighted_diff(QualityPair(0.75, 0.5),
                                                       1e3, coarse, 1000, rng_a);
        const BoundProbeResult b =
            probe_weighted_diff(QualityPair(0.75, 0.5), 1e3, fine, 1000, rng_b);
        CHECK(a.diff_value_bits <= b.diff_value_bits + 3.0 * a.mc_stderr + 1e-9);
    }
}

TEST_CASE("weighted-difference growth obeys the max-alpha bound") {
    const ConverseGridSpec grid{8, 8, 8, 8};
    const std::vector<double> p_levels = {1e2, 1e3, 1e4, 1e5};
    const int draws = 10;

    for (const QualityPair qual : {QualityPair(1.0, 1.0), QualityPair(0.5, 0.25)}) {
        RateCurve curve;
        for (const double p : p_levels) {
            double mean = 0.0;
            for (int d = 0; d < draws; ++d) {
                RngStream rng(86, d);
                mean += probe_weighted_diff(qual, p, grid, 1000, rng)
                            .diff_value_bits;
            }
            curve.points.push_back({p, mean / draws, 0.0});
        }
        const double slope =
            estimate_dof_slope(curve, static_cast<int>(curve.points.size()));
        const double bound = std::max(qual.alpha1, qual.alpha2);
        CAPTURE(qual.alpha1);
        CHECK(slope <= bound + 0.15);
    }
}
