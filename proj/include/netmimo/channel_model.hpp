// SPDX-License-Identifier: Apache-2.0
//
// Temporally correlated Rayleigh channels for a two-cell downlink, plus the
// delay-degraded transmitter-side channel estimates (CSIT views).
//
// Estimate model, per receiver j: a worse estimate w_j shared by both TXs,
// a better estimate b_j = w_j + e_j held by the serving TX, and the true
// channel h_j = b_j + n_j. The three innovations are independent complex
// Gaussians with variances chosen so that
//   cov(h_j - b_j) = sigma1^2 I   (better estimate, quality alpha1)
//   cov(h_j - w_j) = sigma2^2 I   (shared worse estimate, quality alpha2)
// and each channel entry has unit variance.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "netmimo/rng.hpp"

namespace netmimo {

using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;

// Channels from both TXs to each of the two RXs at one time slot.
struct NetworkChannel {
    Vec2c h1;
    Vec2c h2;
    int t = 0;
};

// Feedback delay (RX to serving TX), backhaul delay (TX to TX) and Doppler
// spread, all in consistent time units.
struct DelayProfile {
    double tau_fb = 0.0;
    double tau_bh = 0.0;
    double f_d = 0.0;
};

// CSIT quality exponents: estimation error variance scales as P^-alpha.
// alpha1 applies to the less delayed (own-cell) estimate, alpha2 to the
// cross-cell one, with 0 <= alpha2 <= alpha1 <= 1.
struct QualityPair {
    double alpha1 = 1.0;
    double alpha2 = 0.5;

    QualityPair() = default;
    QualityPair(double a1, double a2);
};

// Everything one TX knows about the current channels: its better estimate of
// the served RX, the worse estimate of the other RX, and the worse estimates
// of both RXs that are common knowledge across TXs.
struct CsitView {
    struct Estimate {
        Vec2c value = Vec2c::Zero();
        double quality = 0.0;
    };

    int tx_index = 1;
    std::array<Estimate, 2> est;         // indexed by rx - 1
    std::array<Vec2c, 2> shared_worse;   // identical at both TX views

    const Estimate& estimate_of(int rx) const { return est[rx - 1]; }
    const Vec2c& shared_worse_of(int rx) const { return shared_worse[rx - 1]; }
};

struct CsitDraw {
    NetworkChannel channel;
    CsitView tx1;
    CsitView tx2;
};

// Bessel function of the first kind, order zero. Power series below |x| = 12,
// Hankel asymptotic expansion above; absolute error below 1e-9 on |x| <= 100.
double bessel_j0(double x);

// Clarke correlation rho = J0(2 pi f_d tau), clamped to [0, 1]. J0 turns
// negative past its first zero while the Gauss-Markov model assumes
// rho in [0, 1]; `clamped` reports when the clamp was applied.
double correlation_from_delay(const DelayProfile& profile, double tau,
                              bool* clamped = nullptr);

// One Gauss-Markov step: rho * h_prev - sqrt(1 - rho^2) * e with e ~ CN(0, I).
Vec2c evolve_channel(const Vec2c& h_prev, double rho, RngStream& rng);

// Prediction error variance after delay tau: 1 - J0^2(2 pi f_d tau).
double sigma_sq_from_delay(const DelayProfile& profile, double tau);

// Exponent parameterization sigma^2 = P^-alpha. Requires P >= 1 (linear).
double sigma_sq_from_alpha(double alpha, double P);

// Reported quality -log(sigma^2)/log(P), clamped to [0, 1]; 1 for sigma = 0.
double alpha_from_sigma(double sigma_sq, double P);

// Draws the true channels and both TX views with the nested estimate chain.
// The worse estimates stored in the two views are bit-identical.
CsitDraw generate_csit_views(const QualityPair& qual, double P, RngStream& rng);

// Same construction from explicit error variances (0 <= s1 <= s2 <= 1);
// quality tags are recorded verbatim. sigma = 0 yields exact estimates.
CsitDraw generate_csit_views_sigma(double sigma1_sq, double sigma2_sq,
                                   double alpha1_tag, double alpha2_tag,
                                   RngStream& rng);

// Perfect-CSIT view: both estimates equal the true channel.
CsitDraw generate_perfect_views(RngStream& rng);

}  // namespace netmimo
