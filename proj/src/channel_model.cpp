// SPDX-License-Identifier: Apache-2.0

#include "netmimo/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace netmimo {

namespace {

// Ascending power series sum_k (-1)^k (x^2/4)^k / (k!)^2. Below |x| = 12 the
// largest term stays under ~4e3, so cancellation costs at most ~1e-12.
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Hankel expansion J0(x) ~ sqrt(2/(pi x)) (p cos(x - pi/4) + q sin(x - pi/4)),
// truncated at the smallest term. Error ~ e^{-2x}, below 1e-9 for x >= 12.
double j0_asymptotic(double x) {
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k < 64; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        if (std::abs(term) >= prev) break;  // asymptotic divergence
        prev = std::abs(term);
        switch (k % 4) {
            case 0: p += term; break;
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
        }
        if (std::abs(term) < 1e-19) break;
    }
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (p * std::cos(chi) + q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax <= 12.0) return j0_series(ax);
    return j0_asymptotic(ax);
}

QualityPair::QualityPair(double a1, double a2) : alpha1(a1), alpha2(a2) {
    if (!(a1 >= 0.0 && a1 <= 1.0) || !(a2 >= 0.0 && a2 <= 1.0) || a2 > a1)
        throw std::invalid_argument(
            "QualityPair requires 0 <= alpha2 <= alpha1 <= 1");
}

double correlation_from_delay(const DelayProfile& profile, double tau,
                              bool* clamped) {
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    const double rho = bessel_j0(2.0 * std::numbers::pi * profile.f_d * tau);
    if (clamped) *clamped = (rho < 0.0 || rho > 1.0);
    return std::min(1.0, std::max(0.0, rho));
}

Vec2c evolve_channel(const Vec2c& h_prev, double rho, RngStream& rng) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("rho must lie in [0, 1]");
    const std::complex<double> e0 = rng.complex_gaussian();
    const std::complex<double> e1 = rng.complex_gaussian();
    const double w = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    Vec2c h;
    h(0) = rho * h_prev(0) - w * e0;
    h(1) = rho * h_prev(1) - w * e1;
    return h;
}

double sigma_sq_from_delay(const DelayProfile& profile, double tau) {
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    const double j = bessel_j0(2.0 * std::numbers::pi * profile.f_d * tau);
    return std::min(1.0, std::max(0.0, 1.0 - j * j));
}

double sigma_sq_from_alpha(double alpha, double P) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (!(P >= 1.0))
        throw std::invalid_argument("P must be >= 1 (linear power)");
    return std::min(1.0, std::pow(P, -alpha));
}

double alpha_from_sigma(double sigma_sq, double P) {
    if (sigma_sq <= 0.0) return 1.0;
    if (P <= 1.0) return 1.0;
    const double a = -std::log(sigma_sq) / std::log(P);
    return std::min(1.0, std::max(0.0, a));
}

CsitDraw generate_csit_views_sigma(double sigma1_sq, double sigma2_sq,
                                   double alpha1_tag, double alpha2_tag,
                                   RngStream& rng) {
    if (!(sigma1_sq >= 0.0 && sigma2_sq >= sigma1_sq && sigma2_sq <= 1.0))
        throw std::invalid_argument(
            "error variances must satisfy 0 <= sigma1^2 <= sigma2^2 <= 1");

    const double a_w = std::sqrt(std::max(0.0, 1.0 - sigma2_sq));
    const double a_e = std::sqrt(std::max(0.0, sigma2_sq - sigma1_sq));
    const double a_n = std::sqrt(sigma1_sq);

    // Fixed draw order: (w, e, n) for RX-1, then the same for RX-2.
    std::array<Vec2c, 2> w, b, h;
    for (int j = 0; j < 2; ++j) {
        Vec2c zw, ze, zn;
        for (int k = 0; k < 2; ++k) zw(k) = rng.complex_gaussian();
        for (int k = 0; k < 2; ++k) ze(k) = rng.complex_gaussian();
        for (int k = 0; k < 2; ++k) zn(k) = rng.complex_gaussian();
        w[j] = a_w * zw;
        b[j] = w[j] + a_e * ze;
        h[j] = b[j] + a_n * zn;
    }

    CsitDraw draw;
    draw.channel.h1 = h[0];
    draw.channel.h2 = h[1];

    draw.tx1.tx_index = 1;
    draw.tx1.est[0] = {b[0], alpha1_tag};
    draw.tx1.est[1] = {w[1], alpha2_tag};
    draw.tx1.shared_worse = {w[0], w[1]};

    draw.tx2.tx_index = 2;
    draw.tx2.est[1] = {b[1], alpha1_tag};
    draw.tx2.est[0] = {w[0], alpha2_tag};
    draw.tx2.shared_worse = {w[0], w[1]};
    return draw;
}

CsitDraw generate_csit_views(const QualityPair& qual, double P,
                             RngStream& rng) {
    const double s1 = sigma_sq_from_alpha(qual.alpha1, P);
    const double s2 = sigma_sq_from_alpha(qual.alpha2, P);
    return generate_csit_views_sigma(s1, s2, qual.alpha1, qual.alpha2, rng);
}

CsitDraw generate_perfect_views(RngStream& rng) {
    return generate_csit_views_sigma(0.0, 0.0, 1.0, 1.0, rng);
}

}  // namespace netmimo
