// SPDX-License-Identifier: Apache-2.0
//
// Beamformer construction from CSIT views. Three families:
//  - conventional ZF: each element of a beam comes from a different TX's own
//    estimate of the cross channel, so the beam is never fully known at a
//    single TX;
//  - modified ZF: both elements from the shared worse estimate, so both TXs
//    can rebuild the beam exactly;
//  - active/passive ZF: one element pinned to 1, the other chosen from the
//    serving TX's best estimate to satisfy the orthogonality constraint.

#pragma once

#include <stdexcept>

#include "netmimo/channel_model.hpp"

namespace netmimo {

enum class PrecoderKind { ConvZF, ModZF, APZF, Random };

struct PrecoderPair {
    Vec2c q1 = Vec2c::Zero();  // beam carrying RX-1's symbol
    Vec2c q2 = Vec2c::Zero();  // beam carrying RX-2's symbol
    PrecoderKind kind = PrecoderKind::ConvZF;
};

// Thrown when an A/P-ZF denominator estimate falls below the clamping
// threshold; callers resample the realization and count the rejection.
class NearSingularEstimate : public std::runtime_error {
public:
    explicit NearSingularEstimate(const char* what)
        : std::runtime_error(what) {}
};

inline constexpr double kApzfClampEps = 1e-3;

// Unit-norm v with <h, v> = 0. Deterministic phase: the first nonzero entry
// of v is real and nonnegative. Throws on a zero vector.
Vec2c orth_complement(const Vec2c& h);

// Unnormalized beam columns of the conventional ZF construction: element k of
// beam i is element k of orth_complement of TX-k's estimate of the cross
// channel.
std::array<Vec2c, 2> conventional_zf_raw(const CsitView& view1,
                                         const CsitView& view2);

// Conventional ZF with each mixed beam renormalized to unit norm.
PrecoderPair conventional_zf(const CsitView& view1, const CsitView& view2);

// Modified ZF from the shared worse estimates alone; reconstructible
// identically at both TXs.
PrecoderPair modified_zf(const Vec2c& shared_worse_h1,
                         const Vec2c& shared_worse_h2);

// Active/passive ZF: q1 = [1, -conj(h21)/conj(h22)] from TX-2's own estimate,
// q2 = [-conj(h12)/conj(h11), 1] from TX-1's. Beams are not normalized; the
// passive element stays exactly 1 and power accounting absorbs the norm.
PrecoderPair ap_zf(const CsitView& view1, const CsitView& view2,
                   double eps = kApzfClampEps);

// Two independent isotropic unit-norm beams (the random companions).
PrecoderPair random_pair(RngStream& rng);

// |h^H q|^2
double residual_interference_power(const Vec2c& h, const Vec2c& q);

}  // namespace netmimo
