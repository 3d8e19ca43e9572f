// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace netmimo {

// Exact rational arithmetic for the polytope computations. Intermediates run
// through __int128; inputs here are small fractions so overflow throws rather
// than being handled gracefully.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("rational overflow");
        return static_cast<long long>(v);
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        Rational r;
        r.num = narrow(n);
        r.den = narrow(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den + (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den - (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) {
        return !(a == b);
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den <= (__int128)b.num * a.den;
    }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    // Best rational approximation by continued fractions. Throws if no
    // fraction with denominator <= max_den comes within tol of x.
    static Rational from_double(double x, double tol = 1e-12,
                                long long max_den = 1000000) {
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite input");
        const double scale = std::max(1.0, std::abs(x));
        long long h_prev = 1, h = static_cast<long long>(std::floor(x));
        long long k_prev = 0, k = 1;
        double frac = x - std::floor(x);
        for (int iter = 0; iter < 64; ++iter) {
            const double approx = static_cast<double>(h) / k;
            if (std::abs(approx - x) <= tol * scale) return Rational(h, k);
            if (frac == 0.0) break;
            const double inv = 1.0 / frac;
            const long long a = static_cast<long long>(std::floor(inv));
            frac = inv - std::floor(inv);
            const long long h_next = a * h + h_prev;
            const long long k_next = a * k + k_prev;
            if (k_next > max_den) break;
            h_prev = h;
            h = h_next;
            k_prev = k;
            k = k_next;
        }
        if (std::abs(static_cast<double>(h) / k - x) <= tol * scale)
            return Rational(h, k);
        throw std::invalid_argument("no rational approximation within tolerance");
    }
};

}  // namespace netmimo
