// SPDX-License-Identifier: Apache-2.0

#include "netmimo/schemes.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace netmimo {

namespace {

using cd = std::complex<double>;
using Mat32c = Eigen::Matrix<cd, 3, 2>;

double log2_safe(double x) { return std::log2(std::max(x, 1.0)); }

// At quality exponent 0 (and at P = 1, where every sigma^2 reaches 1) the
// estimates have zero variance and are exactly the zero vector; nulling is
// impossible and the ZF-type constructions degenerate. Any deterministic
// beam pair keeps the protocols well defined, so fall back to the antenna
// axes (the alpha = 0 limit of the A/P-ZF construction).
bool is_zero_estimate(const Vec2c& v) { return v.isZero(0.0); }

PrecoderPair axis_beams(PrecoderKind kind) {
    PrecoderPair pair;
    pair.q1 << 1.0, 0.0;
    pair.q2 << 0.0, 1.0;
    pair.kind = kind;
    return pair;
}

// log2 det(I + Sigma^-1 M M^H) for a 2x2 system with diagonal noise.
double two_equation_rate(const Mat2c& m, double noise_a, double noise_b) {
    Mat2c g = m * m.adjoint();
    Mat2c s = Mat2c::Zero();
    s(0, 0) = noise_a;
    s(1, 1) = noise_b;
    const double num = std::real((s + g).determinant());
    const double den = noise_a * noise_b;
    return log2_safe(num / den);
}

}  // namespace

const char* scheme_label(Scheme s) {
    switch (s) {
        case Scheme::Zf: return "zf";
        case Scheme::ZfPerfect: return "zf_perfect";
        case Scheme::Mat: return "mat";
        case Scheme::AmatZf: return "amat_zf";
        case Scheme::AmatApzf: return "amat_apzf";
        case Scheme::Vertex: return "vertex";
    }
    throw std::invalid_argument("unknown scheme");
}

Scheme scheme_from_label(const std::string& label) {
    for (Scheme s : {Scheme::Zf, Scheme::ZfPerfect, Scheme::Mat,
                     Scheme::AmatZf, Scheme::AmatApzf, Scheme::Vertex}) {
        if (label == scheme_label(s)) return s;
    }
    throw std::invalid_argument("unknown scheme: " + label);
}

QuantizedInterference quantize_interference(std::complex<double> eta, int bits,
                                            double source_power) {
    QuantizedInterference out;
    out.index_bits = std::max(0, bits);
    if (out.index_bits == 0 || !(source_power > 0.0)) {
        out.reconstruction = {0.0, 0.0};
        out.distortion = std::norm(eta);
        return out;
    }
    const int bits_re = std::min(40, (out.index_bits + 1) / 2);
    const int bits_im = std::min(40, out.index_bits / 2);
    const double range = 4.0 * std::sqrt(0.5 * source_power);

    // Midtread lattice: reconstruction points at multiples of the cell width,
    // so a zero input reconstructs to exactly zero.
    auto quantize_component = [range](double v, int nbits) {
        if (nbits <= 0) return 0.0;
        const double width = 2.0 * range / static_cast<double>(1LL << nbits);
        const double rec = width * std::round(v / width);
        return std::min(range, std::max(-range, rec));
    };

    out.reconstruction = {quantize_component(eta.real(), bits_re),
                          quantize_component(eta.imag(), bits_im)};
    out.distortion = std::norm(eta - out.reconstruction);
    return out;
}

DecodedRates successive_decode_rates(const StreamPowers& p) {
    DecodedRates out;
    double common = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 2; ++j) {
        const double below = 1.0 + p.private_own[j] + p.leak[j];
        common = std::min(common, std::log2(1.0 + p.common[j] / below));
        out.private_rate[j] = std::log2(1.0 + p.private_own[j] / (1.0 + p.leak[j]));
    }
    out.common_rate = common;
    return out;
}

std::complex<double> overheard_interference(const Vec2c& h, const Vec2c& p_beam,
                                            const Vec2c& zf_beam, double p_rand,
                                            double p_zf,
                                            std::complex<double> sym_rand,
                                            std::complex<double> sym_zf) {
    return h.dot(p_beam) * std::sqrt(p_rand) * sym_rand +
           h.dot(zf_beam) * std::sqrt(p_zf) * sym_zf;
}

// --- conventional ZF ---------------------------------------------------------

SchemeOutcome run_zf_scheme(const NetworkChannel& channel,
                            const CsitView& view1, const CsitView& view2,
                            double P) {
    const bool no_information = is_zero_estimate(view1.estimate_of(1).value) ||
                                is_zero_estimate(view1.estimate_of(2).value) ||
                                is_zero_estimate(view2.estimate_of(1).value) ||
                                is_zero_estimate(view2.estimate_of(2).value);
    const PrecoderPair pair = no_information
                                  ? axis_beams(PrecoderKind::ConvZF)
                                  : conventional_zf(view1, view2);
    const double ps = 0.5 * P;

    const double s1 = residual_interference_power(channel.h1, pair.q1) * ps;
    const double i1 = residual_interference_power(channel.h1, pair.q2) * ps;
    const double s2 = residual_interference_power(channel.h2, pair.q2) * ps;
    const double i2 = residual_interference_power(channel.h2, pair.q1) * ps;

    SchemeOutcome out;
    out.rate_rx1 = std::log2(1.0 + s1 / (1.0 + i1));
    out.rate_rx2 = std::log2(1.0 + s2 / (1.0 + i2));
    out.slots_used = 1;
    out.power.total = P;
    out.power.splits = {{"stream", ps}};

    double max_tx = 0.0;
    for (int k = 0; k < 2; ++k)
        max_tx = std::max(max_tx,
                          ps * (std::norm(pair.q1(k)) + std::norm(pair.q2(k))));
    out.diagnostics["max_tx_power"] = max_tx;
    out.diagnostics["residual_rx1"] = i1 / ps;
    out.diagnostics["residual_rx2"] = i2 / ps;
    return out;
}

// --- MAT alignment -----------------------------------------------------------

MatStacks build_mat_stacks(const std::array<NetworkChannel, 3>& slots, int rx) {
    if (rx != 1 && rx != 2) throw std::invalid_argument("rx must be 1 or 2");

    const Vec2c& h1 = slots[0].h1;
    const Vec2c& h2 = slots[0].h2;
    // Retransmissions carry eta_1 in slot 2 and eta_2 in slot 3, both from
    // antenna 1, scaled so that antenna spends exactly P in the slot.
    const double c2 = std::numbers::sqrt2 / h1.norm();
    const double c3 = std::numbers::sqrt2 / h2.norm();

    MatStacks st;
    st.desired.setZero();
    st.interference.setZero();
    if (rx == 1) {
        st.desired.row(0) = h1.adjoint();
        st.desired.row(2) = c3 * std::conj(slots[2].h1(0)) * h2.adjoint();
        st.interference.row(0) = h1.adjoint();
        st.interference.row(1) = c2 * std::conj(slots[1].h1(0)) * h1.adjoint();
    } else {
        st.desired.row(0) = h2.adjoint();
        st.desired.row(1) = c2 * std::conj(slots[1].h2(0)) * h1.adjoint();
        st.interference.row(0) = h2.adjoint();
        st.interference.row(2) = c3 * std::conj(slots[2].h2(0)) * h2.adjoint();
    }
    return st;
}

double projected_mimo_rate(const Mat32c& desired, const Mat32c& interference,
                           double symbol_power) {
    Eigen::JacobiSVD<Mat32c> svd(interference, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    const double tol = sv(0) * 1e-8;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol && sv(i) > 0.0) ++rank;

    const Eigen::Matrix<cd, 3, Eigen::Dynamic> q =
        svd.matrixU().rightCols(3 - rank);
    const Eigen::Matrix<cd, Eigen::Dynamic, 2> a_eff = q.adjoint() * desired;
    const Mat2c m = Mat2c::Identity() + symbol_power * (a_eff.adjoint() * a_eff);
    return log2_safe(std::real(m.determinant()));
}

SchemeOutcome run_mat(const std::array<NetworkChannel, 3>& slots, double P) {
    const double ps = 0.5 * P;
    SchemeOutcome out;
    out.slots_used = 3;
    out.power.total = P;
    out.power.splits = {{"symbol", ps}};

    double rank_violations = 0.0;
    for (int rx = 1; rx <= 2; ++rx) {
        const MatStacks st = build_mat_stacks(slots, rx);

        Eigen::JacobiSVD<Mat32c> svd_d(st.desired);
        Eigen::JacobiSVD<Mat32c> svd_i(st.interference);
        const double cond_d =
            svd_d.singularValues()(1) / svd_d.singularValues()(0);
        const double ratio_i =
            svd_i.singularValues()(1) / svd_i.singularValues()(0);
        if (!(cond_d > 1e-6) || !(ratio_i < 1e-10)) rank_violations += 1.0;

        const double rate =
            projected_mimo_rate(st.desired, st.interference, ps) / 3.0;
        if (rx == 1) {
            out.rate_rx1 = rate;
            out.diagnostics["desired_sv_ratio_rx1"] = cond_d;
            out.diagnostics["interference_sv_ratio_rx1"] = ratio_i;
        } else {
            out.rate_rx2 = rate;
            out.diagnostics["desired_sv_ratio_rx2"] = cond_d;
            out.diagnostics["interference_sv_ratio_rx2"] = ratio_i;
        }
    }
    out.diagnostics["rank_violations"] = rank_violations;
    // Slot 1: each antenna carries one symbol of each pair at P/2. Slots 2-3:
    // antenna 1 retransmits at exactly P by construction of the scale.
    out.diagnostics["max_tx_power"] = P;
    return out;
}

// --- alpha-MAT ---------------------------------------------------------------

namespace {

PrecoderPair apzf_or_axes(const CsitDraw& draw) {
    if (is_zero_estimate(draw.tx1.estimate_of(1).value) &&
        is_zero_estimate(draw.tx2.estimate_of(2).value))
        return axis_beams(PrecoderKind::APZF);
    return ap_zf(draw.tx1, draw.tx2);
}

PrecoderPair slot_zf_beams(const CsitDraw& draw, AmatVariant variant) {
    if (variant == AmatVariant::Apzf) return apzf_or_axes(draw);
    const Vec2c& w1 = draw.tx1.shared_worse_of(1);
    const Vec2c& w2 = draw.tx1.shared_worse_of(2);
    if (is_zero_estimate(w1) && is_zero_estimate(w2))
        return axis_beams(PrecoderKind::ModZF);
    return modified_zf(w1, w2);
}

// Rate of the slot-1 symbol pair at one RX, combining the interference-
// cancelled direct observation (noise 1 + d_own) with the side equation
// reconstructed from the other RX's quantization index (noise d_other).
// With a zero-bit index there is no side equation.
double slot1_pair_rate(const Mat2c& m, double d_own, double d_other,
                       double other_source_power, int bits) {
    if (bits <= 0) {
        const double s = std::norm(m(0, 0)) + std::norm(m(0, 1));
        return std::log2(1.0 + s / (1.0 + d_own));
    }
    const double floor = 1e-12 * std::max(1.0, other_source_power);
    return two_equation_rate(m, 1.0 + d_own, std::max(d_other, floor));
}

}  // namespace

SchemeOutcome run_alpha_mat(const std::array<CsitDraw, 3>& slots, double P,
                            AmatVariant variant, RngStream& rng) {
    const double alpha1 = slots[0].tx1.estimate_of(1).quality;
    const double alpha2 = slots[0].tx1.estimate_of(2).quality;
    const double a_eff = (variant == AmatVariant::Apzf) ? alpha1 : alpha2;
    const double log2p = std::log2(P);

    SchemeOutcome out;
    out.slots_used = 3;
    out.power.total = P;

    // Slot 1: per RX one symbol on the ZF-type beam and one on a random
    // companion. The low-power share P^-a_eff/2 keeps the companion at order
    // P^{1-a_eff} so the overheard interference matches the index budget,
    // while both symbols stay live at a_eff = 0.
    const PrecoderPair zf1 = slot_zf_beams(slots[0], variant);
    const Vec2c q1 = zf1.q1 / zf1.q1.norm();
    const Vec2c q2 = zf1.q2 / zf1.q2.norm();
    const PrecoderPair rnd = random_pair(rng);
    const Vec2c& p1 = rnd.q1;
    const Vec2c& p2 = rnd.q2;

    const double f = 0.5 * std::pow(P, -a_eff);
    const double p_zf = 0.5 * P * (1.0 - f);
    const double p_rand = 0.5 * P * f;

    const cd u_r = rng.complex_gaussian();
    const cd u_z = rng.complex_gaussian();
    const cd v_r = rng.complex_gaussian();
    const cd v_z = rng.complex_gaussian();

    const Vec2c& h1 = slots[0].channel.h1;
    const Vec2c& h2 = slots[0].channel.h2;

    const cd eta1 = overheard_interference(h1, p2, q2, p_rand, p_zf, v_r, v_z);
    const cd eta2 = overheard_interference(h2, p1, q1, p_rand, p_zf, u_r, u_z);
    const double src1 = residual_interference_power(h1, p2) * p_rand +
                        residual_interference_power(h1, q2) * p_zf;
    const double src2 = residual_interference_power(h2, p1) * p_rand +
                        residual_interference_power(h2, q1) * p_zf;

    const int bits =
        std::max(0, static_cast<int>(std::llround((1.0 - a_eff) * log2p)));
    const QuantizedInterference qi1 = quantize_interference(eta1, bits, src1);
    const QuantizedInterference qi2 = quantize_interference(eta2, bits, src2);

    // Slots 2 and 3: broadcast index c_k on a single antenna at power
    // P - P^a_eff, superposed with one fresh private symbol per RX at
    // P^a_eff/2 on the ZF-type beams of that slot.
    const double p_common = std::max(0.0, P - std::pow(P, a_eff));
    const double p_priv = 0.5 * std::pow(P, a_eff);

    double priv_rate[2] = {0.0, 0.0};
    double common_deficit = 0.0;
    double max_tx = 0.0;
    {
        // Slot-1 per-antenna spend.
        for (int k = 0; k < 2; ++k) {
            const double pw = p_rand * (std::norm(p1(k)) + std::norm(p2(k))) +
                              p_zf * (std::norm(q1(k)) + std::norm(q2(k)));
            max_tx = std::max(max_tx, pw);
        }
    }
    for (int t = 1; t <= 2; ++t) {
        const CsitDraw& s = slots[t];
        const PrecoderPair zf = slot_zf_beams(s, variant);
        const Vec2c b1 = zf.q1 / zf.q1.norm();
        const Vec2c b2 = zf.q2 / zf.q2.norm();
        int c_ant;
        if (variant == AmatVariant::ConvZf)
            c_ant = (t == 1) ? 1 : 0;
        else
            c_ant = (t == 1) ? 0 : 1;

        StreamPowers sp;
        for (int j = 0; j < 2; ++j) {
            const Vec2c& h = (j == 0) ? s.channel.h1 : s.channel.h2;
            const Vec2c& own = (j == 0) ? b1 : b2;
            const Vec2c& other = (j == 0) ? b2 : b1;
            sp.common[j] = std::norm(h(c_ant)) * p_common;
            sp.private_own[j] = residual_interference_power(h, own) * p_priv;
            sp.leak[j] = residual_interference_power(h, other) * p_priv;
        }
        const DecodedRates dr = successive_decode_rates(sp);
        priv_rate[0] += dr.private_rate[0];
        priv_rate[1] += dr.private_rate[1];
        if (bits > 0 && dr.common_rate < static_cast<double>(bits))
            common_deficit += 1.0;
        out.diagnostics[t == 1 ? "common_rate_slot2" : "common_rate_slot3"] =
            dr.common_rate;

        for (int k = 0; k < 2; ++k) {
            const double pw = (k == c_ant ? p_common : 0.0) +
                              p_priv * (std::norm(b1(k)) + std::norm(b2(k)));
            max_tx = std::max(max_tx, pw);
        }
    }

    // Slot-1 symbol pairs, decoded with both quantization indices in hand.
    Mat2c hmat;
    hmat.row(0) = h1.adjoint();
    hmat.row(1) = h2.adjoint();
    Mat2c bu, bv;
    bu.col(0) = std::sqrt(p_rand) * p1;
    bu.col(1) = std::sqrt(p_zf) * q1;
    bv.col(0) = std::sqrt(p_rand) * p2;
    bv.col(1) = std::sqrt(p_zf) * q2;

    const Mat2c mu = hmat * bu;
    const Mat2c mv = hmat * bv;
    Mat2c mu_rx1;  // rows: own observation, side equation
    mu_rx1.row(0) = mu.row(0);
    mu_rx1.row(1) = mu.row(1);
    Mat2c mv_rx2;
    mv_rx2.row(0) = mv.row(1);
    mv_rx2.row(1) = mv.row(0);

    const double slot1_rx1 =
        slot1_pair_rate(mu_rx1, qi1.distortion, qi2.distortion, src2, bits);
    const double slot1_rx2 =
        slot1_pair_rate(mv_rx2, qi2.distortion, qi1.distortion, src1, bits);

    out.rate_rx1 = (slot1_rx1 + priv_rate[0]) / 3.0;
    out.rate_rx2 = (slot1_rx2 + priv_rate[1]) / 3.0;

    out.power.splits = {{"slot1_zf", p_zf},
                        {"slot1_random", p_rand},
                        {"common", p_common},
                        {"private", p_priv}};
    out.diagnostics["index_bits"] = static_cast<double>(bits);
    out.diagnostics["eta1_power"] = src1;
    out.diagnostics["eta2_power"] = src2;
    out.diagnostics["distortion1"] = qi1.distortion;
    out.diagnostics["distortion2"] = qi2.distortion;
    out.diagnostics["distortion_above_noise"] =
        (qi1.distortion > 1.0 || qi2.distortion > 1.0) ? 1.0 : 0.0;
    out.diagnostics["common_rate_deficit_slots"] = common_deficit;
    out.diagnostics["max_tx_power"] = max_tx;
    return out;
}

// --- vertex scheme -------------------------------------------------------------

SchemeOutcome run_vertex_scheme(const CsitDraw& draw, double P,
                                int favored_rx) {
    if (favored_rx != 1 && favored_rx != 2)
        throw std::invalid_argument("favored_rx must be 1 or 2");
    const double alpha1 = draw.tx1.estimate_of(1).quality;

    const PrecoderPair pair = apzf_or_axes(draw);
    const Vec2c q1 = pair.q1 / pair.q1.norm();
    const Vec2c q2 = pair.q2 / pair.q2.norm();

    const int ant = (favored_rx == 1) ? 0 : 1;
    const double p_common = std::max(0.0, P - std::pow(P, alpha1));
    const double p_priv = 0.5 * std::pow(P, alpha1);

    StreamPowers sp;
    for (int j = 0; j < 2; ++j) {
        const Vec2c& h = (j == 0) ? draw.channel.h1 : draw.channel.h2;
        const Vec2c& own = (j == 0) ? q1 : q2;
        const Vec2c& other = (j == 0) ? q2 : q1;
        sp.common[j] = std::norm(h(ant)) * p_common;
        sp.private_own[j] = residual_interference_power(h, own) * p_priv;
        sp.leak[j] = residual_interference_power(h, other) * p_priv;
    }
    const DecodedRates dr = successive_decode_rates(sp);

    SchemeOutcome out;
    out.slots_used = 1;
    out.power.total = P;
    out.power.splits = {{"common", p_common}, {"private", p_priv}};
    const int fav = favored_rx - 1;
    const int oth = 1 - fav;
    double rates[2];
    rates[fav] = dr.common_rate + dr.private_rate[fav];
    rates[oth] = dr.private_rate[oth];
    out.rate_rx1 = rates[0];
    out.rate_rx2 = rates[1];

    double max_tx = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double pw = (k == ant ? p_common : 0.0) +
                          p_priv * (std::norm(q1(k)) + std::norm(q2(k)));
        max_tx = std::max(max_tx, pw);
    }
    out.diagnostics["max_tx_power"] = max_tx;
    out.diagnostics["common_rate"] = dr.common_rate;
    return out;
}

}  // namespace netmimo
