// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations, kept independent of the library paths
// they check.

#pragma once

#include <cmath>
#include <numbers>

namespace netmimo::test {

// Plain truncated power series for J0, summed term by term.
inline double j0_power_series(double x, int terms = 40) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < terms; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
    }
    return sum;
}

// Integral representation J0(x) = (1/pi) int_0^pi cos(x sin t) dt via
// composite Simpson. A different route entirely from any series.
inline double j0_quadrature(double x, int panels = 4000) {
    const double h = std::numbers::pi / panels;
    auto f = [x](double t) { return std::cos(x * std::sin(t)); };
    double sum = f(0.0) + f(std::numbers::pi);
    for (int i = 1; i < panels; ++i)
        sum += f(i * h) * ((i % 2) ? 4.0 : 2.0);
    return sum * h / (3.0 * std::numbers::pi);
}

}  // namespace netmimo::test
