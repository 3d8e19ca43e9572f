// SPDX-License-Identifier: Apache-2.0

#include "netmimo/precoding.hpp"

#include <cmath>

namespace netmimo {

Vec2c orth_complement(const Vec2c& h) {
    const double n = h.norm();
    if (!(n > 0.0)) throw std::invalid_argument("degenerate channel");
    Vec2c v;
    v(0) = -std::conj(h(1));
    v(1) = std::conj(h(0));
    v /= v.norm();
    for (int k = 0; k < 2; ++k) {
        const double m = std::abs(v(k));
        if (m > 0.0) {
            v *= std::conj(v(k)) / m;
            v(k) = m;  // anchor entry exactly real
            break;
        }
    }
    return v;
}

namespace {

// Complement without the reporting phase convention. The element mixing
// below needs a phase treatment that is symmetric in the two entries;
// anchoring to entry 0 leaves the two RXs with residual powers a factor ~4
// apart.
Vec2c orth_raw(const Vec2c& h) {
    const double n = h.norm();
    if (!(n > 0.0)) throw std::invalid_argument("degenerate channel");
    Vec2c v;
    v(0) = -std::conj(h(1));
    v(1) = std::conj(h(0));
    return v / n;
}

}  // namespace

std::array<Vec2c, 2> conventional_zf_raw(const CsitView& view1,
                                         const CsitView& view2) {
    // Beam for RX-i mixes the two TXs' different estimates of the cross
    // channel h_{other(i)}.
    const Vec2c o1_of_h2 = orth_raw(view1.estimate_of(2).value);
    const Vec2c o2_of_h2 = orth_raw(view2.estimate_of(2).value);
    const Vec2c o1_of_h1 = orth_raw(view1.estimate_of(1).value);
    const Vec2c o2_of_h1 = orth_raw(view2.estimate_of(1).value);

    Vec2c q1, q2;
    q1(0) = o1_of_h2(0);
    q1(1) = o2_of_h2(1);
    q2(0) = o1_of_h1(0);
    q2(1) = o2_of_h1(1);
    return {q1, q2};
}

PrecoderPair conventional_zf(const CsitView& view1, const CsitView& view2) {
    auto [q1, q2] = conventional_zf_raw(view1, view2);
    const double n1 = q1.norm();
    const double n2 = q2.norm();
    if (n1 < 1e-9 || n2 < 1e-9)
        throw NearSingularEstimate("conventional ZF beam collapsed");
    return {q1 / n1, q2 / n2, PrecoderKind::ConvZF};
}

PrecoderPair modified_zf(const Vec2c& shared_worse_h1,
                         const Vec2c& shared_worse_h2) {
    PrecoderPair pair;
    pair.q1 = orth_complement(shared_worse_h2);
    pair.q2 = orth_complement(shared_worse_h1);
    pair.kind = PrecoderKind::ModZF;
    return pair;
}

PrecoderPair ap_zf(const CsitView& view1, const CsitView& view2, double eps) {
    const Vec2c& h2_at_tx2 = view2.estimate_of(2).value;
    const Vec2c& h1_at_tx1 = view1.estimate_of(1).value;
    if (std::abs(h2_at_tx2(1)) < eps || std::abs(h1_at_tx1(0)) < eps)
        throw NearSingularEstimate("near-singular estimate");

    PrecoderPair pair;
    pair.q1(0) = 1.0;
    pair.q1(1) = -std::conj(h2_at_tx2(0)) / std::conj(h2_at_tx2(1));
    pair.q2(0) = -std::conj(h1_at_tx1(1)) / std::conj(h1_at_tx1(0));
    pair.q2(1) = 1.0;
    pair.kind = PrecoderKind::APZF;
    return pair;
}

PrecoderPair random_pair(RngStream& rng) {
    PrecoderPair pair;
    pair.kind = PrecoderKind::Random;
    for (Vec2c* q : {&pair.q1, &pair.q2}) {
        Vec2c v;
        do {
            v(0) = rng.complex_gaussian();
            v(1) = rng.complex_gaussian();
        } while (v.norm() < 1e-6);
        *q = v / v.norm();
    }
    return pair;
}

double residual_interference_power(const Vec2c& h, const Vec2c& q) {
    return std::norm(h.dot(q));
}

}  // namespace netmimo
