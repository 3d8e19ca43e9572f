// SPDX-License-Identifier: Apache-2.0
//
// One-realization execution of the four transmission schemes. Rates are
// analytic Gaussian-input rates from per-stream SINRs under successive
// decoding; the interference quantizer is the one explicitly signal-level
// element and is simulated on realized symbols.

#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "netmimo/channel_model.hpp"
#include "netmimo/precoding.hpp"

namespace netmimo {

enum class Scheme { Zf, ZfPerfect, Mat, AmatZf, AmatApzf, Vertex };

enum class AmatVariant { ConvZf, Apzf };

const char* scheme_label(Scheme s);
Scheme scheme_from_label(const std::string& label);  // throws on unknown

// Total per-TX budget plus the named per-stream split actually used.
struct PowerAllocation {
    double total = 0.0;
    std::vector<std::pair<std::string, double>> splits;
};

struct SchemeOutcome {
    double rate_rx1 = 0.0;  // bits/s/Hz
    double rate_rx2 = 0.0;
    int slots_used = 1;
    PowerAllocation power;
    std::map<std::string, double> diagnostics;

    double sum_rate() const { return rate_rx1 + rate_rx2; }
};

struct QuantizedInterference {
    int index_bits = 0;
    std::complex<double> reconstruction{0.0, 0.0};
    double distortion = 0.0;
};

// Uniform scalar quantizer on re/im over +-4 standard deviations of each
// component (component variance = source_power / 2), with the bit budget
// split as evenly as possible between the two components.
QuantizedInterference quantize_interference(std::complex<double> eta, int bits,
                                            double source_power);

// Effective received stream powers for one slot of superposed transmission.
// Index 0 is RX-1, 1 is RX-2. The common stream is decoded first at both RXs
// treating everything below it as noise, then subtracted.
struct StreamPowers {
    std::array<double, 2> common{0.0, 0.0};
    std::array<double, 2> private_own{0.0, 0.0};
    std::array<double, 2> leak{0.0, 0.0};
};

struct DecodedRates {
    double common_rate = 0.0;
    std::array<double, 2> private_rate{0.0, 0.0};
};

DecodedRates successive_decode_rates(const StreamPowers& p);

// Interference overheard at one RX in the first slot: h^H (p s_r + q s_z)
// with the realized unit symbols scaled by their power shares. Shared by the
// scheme and by the reconstructibility checks, which recompute it from a
// restricted view.
std::complex<double> overheard_interference(const Vec2c& h, const Vec2c& p_beam,
                                            const Vec2c& zf_beam, double p_rand,
                                            double p_zf,
                                            std::complex<double> sym_rand,
                                            std::complex<double> sym_zf);

// --- conventional ZF, single slot ----------------------------------------

SchemeOutcome run_zf_scheme(const NetworkChannel& channel,
                            const CsitView& view1, const CsitView& view2,
                            double P);

// --- MAT alignment, three slots -------------------------------------------

// Stacked effective matrices seen by one RX over the three slots: the
// desired matrix (coefficients of its own symbol pair, rank 2) and the
// interference matrix (coefficients of the other pair, rank 1). The
// retransmissions are scaled so each transmitting antenna spends exactly P.
struct MatStacks {
    Eigen::Matrix<std::complex<double>, 3, 2> desired;
    Eigen::Matrix<std::complex<double>, 3, 2> interference;
};

MatStacks build_mat_stacks(const std::array<NetworkChannel, 3>& slots, int rx);

// Gaussian MIMO rate after projecting the stacked observation onto the
// orthogonal complement of the interference column space (noise stays white).
// Returns log2 det(I + symbol_power * A_eff^H A_eff), not yet per-slot.
double projected_mimo_rate(
    const Eigen::Matrix<std::complex<double>, 3, 2>& desired,
    const Eigen::Matrix<std::complex<double>, 3, 2>& interference,
    double symbol_power);

SchemeOutcome run_mat(const std::array<NetworkChannel, 3>& slots, double P);

// --- alpha-MAT, three slots ------------------------------------------------

// Slot 1 sends two symbols per RX (high power on the ZF-type beam, low power
// on a random companion), slots 2 and 3 broadcast the quantization indices of
// the overheard interference superposed with fresh private symbols.
SchemeOutcome run_alpha_mat(const std::array<CsitDraw, 3>& slots, double P,
                            AmatVariant variant, RngStream& rng);

// --- single-slot vertex scheme ---------------------------------------------

// Superposition of a common stream on one antenna (desired by favored_rx but
// decodable at both RXs) over two A/P-ZF private streams.
SchemeOutcome run_vertex_scheme(const CsitDraw& draw, double P,
                                int favored_rx);

}  // namespace netmimo
