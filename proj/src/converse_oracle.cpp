// SPDX-License-Identifier: Apache-2.0

#include "netmimo/converse_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace netmimo {

Mat2c CovarianceCandidate::matrix() const {
    Vec2c v1, v2;
    const double c = std::cos(eigvec_angle);
    const double s = std::sin(eigvec_angle);
    const std::complex<double> ph(std::cos(eigvec_phase),
                                  std::sin(eigvec_phase));
    v1 << c, s * ph;
    v2 << -s * std::conj(ph), c;
    return lambda1 * (v1 * v1.adjoint()) + lambda2 * (v2 * v2.adjoint());
}

BoundProbeResult probe_weighted_diff(const QualityPair& qual, double P,
                                     const ConverseGridSpec& grid,
                                     int mc_samples, RngStream& rng) {
    if (!(P >= 1.0)) throw std::invalid_argument("P must be >= 1");
    if (grid.angles < 8 || grid.phases < 8 || grid.lambda_splits < 8 ||
        grid.trace_levels < 8)
        throw std::invalid_argument("grid resolution must be >= 8 per axis");
    if (mc_samples < 1000)
        throw std::invalid_argument("mc_samples must be >= 1000");

    const CsitDraw draw = generate_csit_views(qual, P, rng);
    const Vec2c b1 = draw.tx1.estimate_of(1).value;
    const Vec2c b2 = draw.tx2.estimate_of(2).value;
    const double err_sd = std::sqrt(sigma_sq_from_alpha(qual.alpha1, P));

    // Conditioned on the estimates, h_j ~ CN(b_j, sigma1^2 I). One error set
    // is shared by every candidate so the argmax is stable.
    std::vector<Vec2c> h1(mc_samples), h2(mc_samples);
    for (int s = 0; s < mc_samples; ++s) {
        Vec2c n1, n2;
        for (int k = 0; k < 2; ++k) n1(k) = err_sd * rng.complex_gaussian();
        for (int k = 0; k < 2; ++k) n2(k) = err_sd * rng.complex_gaussian();
        h1[s] = b1 + n1;
        h2[s] = b2 + n2;
    }

    const double inv_mc = 1.0 / mc_samples;
    BoundProbeResult result;
    result.p_linear = P;
    result.diff_value_bits = -std::numeric_limits<double>::infinity();

    std::vector<double> g11(mc_samples), g12(mc_samples), g21(mc_samples),
        g22(mc_samples);
    for (int ia = 0; ia <= grid.angles; ++ia) {
        const double theta = 0.5 * std::numbers::pi * ia / grid.angles;
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        for (int ip = 0; ip < grid.phases; ++ip) {
            const double phase = 2.0 * std::numbers::pi * ip / grid.phases;
            const std::complex<double> ph(std::cos(phase), std::sin(phase));
            Vec2c v1, v2;
            v1 << ct, st * ph;
            v2 << -st * std::conj(ph), ct;
            for (int s = 0; s < mc_samples; ++s) {
                g11[s] = std::norm(h1[s].dot(v1));
                g12[s] = std::norm(h1[s].dot(v2));
                g21[s] = std::norm(h2[s].dot(v1));
                g22[s] = std::norm(h2[s].dot(v2));
            }
            for (int it = 0; it <= grid.trace_levels; ++it) {
                const double trace = P * it / grid.trace_levels;
                for (int il = 0; il <= grid.lambda_splits; ++il) {
                    const double f =
                        static_cast<double>(il) / grid.lambda_splits;
                    const double l1 = f * trace;
                    const double l2 = (1.0 - f) * trace;
                    double acc = 0.0;
                    for (int s = 0; s < mc_samples; ++s) {
                        acc += std::log2(1.0 + l1 * g11[s] + l2 * g12[s]) -
                               std::log2(1.0 + l1 * g21[s] + l2 * g22[s]);
                    }
                    const double value = acc * inv_mc;
                    if (value > result.diff_value_bits) {
                        result.diff_value_bits = value;
                        result.argmax = {theta, phase, l1, l2};
                    }
                }
            }
        }
    }

    // Reference value at K = (P/2) I and the stderr at the argmax.
    {
        double acc = 0.0;
        for (int s = 0; s < mc_samples; ++s) {
            acc += std::log2(1.0 + 0.5 * P * h1[s].squaredNorm()) -
                   std::log2(1.0 + 0.5 * P * h2[s].squaredNorm());
        }
        result.diff_at_half_trace_identity = acc * inv_mc;
    }
    {
        const Mat2c k = result.argmax.matrix();
        double mean = 0.0, m2 = 0.0;
        for (int s = 0; s < mc_samples; ++s) {
            const double d =
                std::log2(1.0 + std::real(h1[s].dot(k * h1[s]))) -
                std::log2(1.0 + std::real(h2[s].dot(k * h2[s])));
            const double delta = d - mean;
            mean += delta / (s + 1);
            m2 += delta * (d - mean);
        }
        result.mc_stderr =
            std::sqrt(std::max(0.0, m2 / (mc_samples - 1)) / mc_samples);
    }
    return result;
}

bool log_ratio_inequality_check(double a, double b) {
    if (!(a >= 0.0) || !(b > 0.0))
        throw std::invalid_argument("requires a >= 0 and b > 0");
    return std::log1p(a) - std::log1p(b) <= std::log1p(a / b) + 1e-12;
}

}  // namespace netmimo
