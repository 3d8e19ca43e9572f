// SPDX-License-Identifier: Apache-2.0

#include "netmimo/dof_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netmimo {

namespace {

// Sign of the cross product (b - a) x (c - a) in exact arithmetic.
int orientation(const RationalPoint& a, const RationalPoint& b,
                const RationalPoint& c) {
    const Rational lhs = (b.x - a.x) * (c.y - a.y);
    const Rational rhs = (b.y - a.y) * (c.x - a.x);
    if (lhs == rhs) return 0;
    return lhs < rhs ? -1 : 1;
}

bool lex_less(const RationalPoint& a, const RationalPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// Andrew's monotone chain keeping strictly convex turns only, so collinear
// interior points never appear as vertices.
std::vector<RationalPoint> convex_hull(std::vector<RationalPoint> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n <= 2) return pts;

    std::vector<RationalPoint> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

double theoretical_dof(Scheme scheme, const QualityPair& qual) {
    switch (scheme) {
        case Scheme::Zf: return 2.0 * qual.alpha2;
        case Scheme::ZfPerfect: return 2.0;
        case Scheme::Mat: return 4.0 / 3.0;
        case Scheme::AmatZf: return (4.0 + 2.0 * qual.alpha2) / 3.0;
        case Scheme::AmatApzf: return (4.0 + 2.0 * qual.alpha1) / 3.0;
        case Scheme::Vertex:
            return 1.0 + std::max(qual.alpha1, qual.alpha2);
    }
    throw std::invalid_argument("unknown scheme");
}

DofRegion dof_region(const QualityPair& qual) {
    const Rational m =
        Rational::from_double(std::max(qual.alpha1, qual.alpha2));
    const Rational bound = Rational(2) + m;

    DofRegion region;
    region.halfspaces_exact = {
        std::array<Rational, 3>{Rational(1), Rational(0), Rational(1)},
        std::array<Rational, 3>{Rational(0), Rational(1), Rational(1)},
        std::array<Rational, 3>{Rational(2), Rational(1), bound},
        std::array<Rational, 3>{Rational(1), Rational(2), bound},
        std::array<Rational, 3>{Rational(-1), Rational(0), Rational(0)},
        std::array<Rational, 3>{Rational(0), Rational(-1), Rational(0)},
    };
    for (const auto& hs : region.halfspaces_exact)
        region.halfspaces.push_back(
            {hs[0].to_double(), hs[1].to_double(), hs[2].to_double()});

    // Candidate vertices: feasible pairwise intersections of boundary lines.
    std::vector<RationalPoint> candidates;
    const auto& hs = region.halfspaces_exact;
    for (size_t i = 0; i < hs.size(); ++i) {
        for (size_t j = i + 1; j < hs.size(); ++j) {
            const Rational det = hs[i][0] * hs[j][1] - hs[i][1] * hs[j][0];
            if (det == Rational(0)) continue;
            RationalPoint p;
            p.x = (hs[i][2] * hs[j][1] - hs[i][1] * hs[j][2]) / det;
            p.y = (hs[i][0] * hs[j][2] - hs[i][2] * hs[j][0]) / det;
            bool feasible = true;
            for (const auto& h : hs) {
                if (!(h[0] * p.x + h[1] * p.y <= h[2])) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) candidates.push_back(p);
        }
    }

    region.vertices_exact = convex_hull(std::move(candidates));
    for (const auto& v : region.vertices_exact)
        region.vertices.push_back({v.x.to_double(), v.y.to_double()});
    return region;
}

bool region_contains(const DofRegion& region, const DofPoint& p, double tol) {
    if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
    for (const auto& h : region.halfspaces)
        if (h.a1 * p.d1 + h.a2 * p.d2 > h.b + tol) return false;
    return true;
}

double estimate_dof_slope(const RateCurve& curve, int window) {
    const int n = static_cast<int>(curve.points.size());
    if (window < 2) throw std::invalid_argument("window must be >= 2");
    if (n < window) throw std::invalid_argument("fewer points than window");
    for (int i = 1; i < n; ++i)
        if (!(curve.points[i].p_linear > curve.points[i - 1].p_linear))
            throw std::invalid_argument("curve must be strictly increasing in P");

    double mx = 0.0, my = 0.0;
    for (int i = n - window; i < n; ++i) {
        mx += std::log2(curve.points[i].p_linear);
        my += curve.points[i].mean_sum_rate;
    }
    mx /= window;
    my /= window;
    double sxx = 0.0, sxy = 0.0;
    for (int i = n - window; i < n; ++i) {
        const double dx = std::log2(curve.points[i].p_linear) - mx;
        sxx += dx * dx;
        sxy += dx * (curve.points[i].mean_sum_rate - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("degenerate power grid");
    return sxy / sxx;
}

}  // namespace netmimo
