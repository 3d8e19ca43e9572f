// SPDX-License-Identifier: Apache-2.0
//
// Numerical probe of the extremal inequality behind the DoF outer bound: over
// input covariances K >= 0 with tr(K) <= P, the maximized difference
//   E log(1 + h1^H K h1) - E log(1 + h2^H K h2)
// (expectations over the estimation errors, estimates held fixed) grows no
// faster than max(alpha1, alpha2) * log P. The probe grid-searches an
// eigendecomposition parameterization of K with common random numbers across
// candidates. It checks the bound numerically; it does not prove it.

#pragma once

#include "netmimo/channel_model.hpp"

namespace netmimo {

struct CovarianceCandidate {
    double eigvec_angle = 0.0;  // [0, pi/2]
    double eigvec_phase = 0.0;  // [0, 2 pi)
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    Mat2c matrix() const;
};

struct ConverseGridSpec {
    int angles = 32;
    int phases = 16;
    int lambda_splits = 32;
    int trace_levels = 8;
};

struct BoundProbeResult {
    double p_linear = 0.0;
    double diff_value_bits = 0.0;  // maximized difference, in bits
    CovarianceCandidate argmax;
    double mc_stderr = 0.0;
    // Same objective evaluated at K = (P/2) I with the same error draws;
    // the grid maximum can never fall below it.
    double diff_at_half_trace_identity = 0.0;
};

// Draws one set of estimates, then maximizes the Monte-Carlo estimate of the
// weighted difference over the candidate grid. Grid axes nest under doubling,
// so refining a grid can only raise the reported maximum. Requires at least
// 8 points per axis and 1000 samples.
BoundProbeResult probe_weighted_diff(const QualityPair& qual, double P,
                                     const ConverseGridSpec& grid,
                                     int mc_samples, RngStream& rng);

// Executable form of the elementary step log((1+a)/(1+b)) <= log(1 + a/b)
// for a >= 0, b > 0 (with 1e-12 slack for rounding).
bool log_ratio_inequality_check(double a, double b);

}  // namespace netmimo
