// SPDX-License-Identifier: Apache-2.0
//
// Degrees-of-freedom formulas, the optimal DoF region polytope, and the
// finite-SNR slope estimator used to measure DoF from simulated rate curves.

#pragma once

#include <array>
#include <vector>

#include "netmimo/channel_model.hpp"
#include "netmimo/rational.hpp"
#include "netmimo/schemes.hpp"

namespace netmimo {

struct DofPoint {
    double d1 = 0.0;
    double d2 = 0.0;
};

// a1 * d1 + a2 * d2 <= b
struct Halfspace {
    double a1 = 0.0;
    double a2 = 0.0;
    double b = 0.0;
};

struct RationalPoint {
    Rational x;
    Rational y;
    friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

struct DofRegion {
    std::vector<Halfspace> halfspaces;
    std::vector<DofPoint> vertices;  // extreme points, counterclockwise
    std::vector<std::array<Rational, 3>> halfspaces_exact;
    std::vector<RationalPoint> vertices_exact;
};

// Theoretical sum DoF of a scheme at the given CSIT qualities.
double theoretical_dof(Scheme scheme, const QualityPair& qual);

// The optimal region: d1 <= 1, d2 <= 1, 2 d1 + d2 <= 2 + m, d1 + 2 d2 <= 2 + m
// with m = max(alpha1, alpha2), intersected with the nonnegative quadrant.
// Vertices are enumerated exactly in rational arithmetic.
DofRegion dof_region(const QualityPair& qual);

bool region_contains(const DofRegion& region, const DofPoint& p, double tol);

struct RateCurve {
    struct Point {
        double p_linear = 0.0;
        double mean_sum_rate = 0.0;  // bits/s/Hz
        double stderr_ = 0.0;
    };
    std::vector<Point> points;  // strictly increasing in p_linear
};

// Least-squares slope of mean rate against log2(P) over the `window`
// highest-power points.
double estimate_dof_slope(const RateCurve& curve, int window);

}  // namespace netmimo
