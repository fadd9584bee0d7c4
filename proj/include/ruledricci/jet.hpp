#pragma once

#include <cmath>
#include <string>

#include "ruledricci/errors.hpp"

namespace rr {

/// Value and first three derivatives with respect to the curve parameter.
/// Arithmetic propagates derivatives exactly (truncated Taylor series of
/// order 3), so downstream quantities built from jets carry no truncation
/// error, only rounding.
struct Jet3 {
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;

    static Jet3 constant(double v) { return {v, 0.0, 0.0, 0.0}; }
    static Jet3 variable(double v) { return {v, 1.0, 0.0, 0.0}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.d0 + b.d0, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.d0, -a.d1, -a.d2, -a.d3}; }

/// Leibniz rule through order 3.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.d0 * b.d0,
            a.d1 * b.d0 + a.d0 * b.d1,
            a.d2 * b.d0 + 2.0 * a.d1 * b.d1 + a.d0 * b.d2,
            a.d3 * b.d0 + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.d0 * b.d3};
}

inline Jet3 operator*(double s, const Jet3& a) { return {s * a.d0, s * a.d1, s * a.d2, s * a.d3}; }
inline Jet3 operator*(const Jet3& a, double s) { return s * a; }
inline Jet3 operator+(const Jet3& a, double s) { return {a.d0 + s, a.d1, a.d2, a.d3}; }
inline Jet3 operator+(double s, const Jet3& a) { return a + s; }
inline Jet3 operator-(const Jet3& a, double s) { return {a.d0 - s, a.d1, a.d2, a.d3}; }
inline Jet3 operator-(double s, const Jet3& a) { return {s - a.d0, -a.d1, -a.d2, -a.d3}; }

/// Chain rule (Faa di Bruno) for f(g) given f's derivatives at g.d0.
inline Jet3 compose(const Jet3& g, double f0, double f1, double f2, double f3) {
    return {f0,
            f1 * g.d1,
            f2 * g.d1 * g.d1 + f1 * g.d2,
            f3 * g.d1 * g.d1 * g.d1 + 3.0 * f2 * g.d1 * g.d2 + f1 * g.d3};
}

namespace detail {
inline void require_finite(const Jet3& j, const char* what) {
    if (!std::isfinite(j.d0) || !std::isfinite(j.d1) || !std::isfinite(j.d2) ||
        !std::isfinite(j.d3)) {
        throw NumericError(std::string("non-finite value in ") + what);
    }
}
}  // namespace detail

inline Jet3 reciprocal(const Jet3& a) {
    if (a.d0 == 0.0) throw NumericError("division by zero");
    const double r = 1.0 / a.d0;
    return compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
inline Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }
inline Jet3 operator/(double s, const Jet3& a) { return s * reciprocal(a); }

inline Jet3 sin(const Jet3& a) {
    const double s = std::sin(a.d0), c = std::cos(a.d0);
    return compose(a, s, c, -s, -c);
}

inline Jet3 cos(const Jet3& a) {
    const double s = std::sin(a.d0), c = std::cos(a.d0);
    return compose(a, c, -s, -c, s);
}

inline Jet3 tan(const Jet3& a) {
    const double v = std::tan(a.d0);
    const double s2 = 1.0 + v * v;  // sec^2
    Jet3 r = compose(a, v, s2, 2.0 * v * s2, 2.0 * s2 * (s2 + 2.0 * v * v));
    detail::require_finite(r, "tan");
    return r;
}

inline Jet3 tanh(const Jet3& a) {
    const double v = std::tanh(a.d0);
    const double s = 1.0 - v * v;  // sech^2
    return compose(a, v, s, -2.0 * v * s, -2.0 * s * s + 4.0 * v * v * s);
}

/// sech is a first-class primitive; 1/cosh overflows for large arguments
/// while sech decays cleanly.
inline Jet3 sech(const Jet3& a) {
    const double v = 1.0 / std::cosh(a.d0);
    const double w = std::tanh(a.d0);
    return compose(a, v, -v * w, v * (w * w - v * v), v * w * (5.0 * v * v - w * w));
}

inline Jet3 sqrt(const Jet3& a) {
    if (a.d0 < 0.0) throw NumericError("sqrt of negative value");
    if (a.d0 == 0.0) {
        if (a.d1 == 0.0 && a.d2 == 0.0 && a.d3 == 0.0) return Jet3::constant(0.0);
        throw NumericError("sqrt derivative singular at zero");
    }
    const double r = std::sqrt(a.d0);
    const double f1 = 0.5 / r;
    const double f2 = -0.25 / (a.d0 * r);
    const double f3 = 0.375 / (a.d0 * a.d0 * r);
    return compose(a, r, f1, f2, f3);
}

inline Jet3 asin(const Jet3& a) {
    if (a.d0 < -1.0 || a.d0 > 1.0) throw NumericError("asin argument outside [-1, 1]");
    const double q = 1.0 - a.d0 * a.d0;
    if (q == 0.0) throw NumericError("asin derivative singular at +-1");
    const double f1 = 1.0 / std::sqrt(q);
    const double f2 = a.d0 * f1 / q;
    const double f3 = (1.0 + 2.0 * a.d0 * a.d0) * f1 / (q * q);
    return compose(a, std::asin(a.d0), f1, f2, f3);
}

inline Jet3 atan(const Jet3& a) {
    const double q = 1.0 + a.d0 * a.d0;
    return compose(a, std::atan(a.d0), 1.0 / q, -2.0 * a.d0 / (q * q),
                   (6.0 * a.d0 * a.d0 - 2.0) / (q * q * q));
}

inline Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.d0);
    return compose(a, e, e, e, e);
}

inline Jet3 log(const Jet3& a) {
    if (a.d0 <= 0.0) throw NumericError("log of non-positive value");
    const double r = 1.0 / a.d0;
    return compose(a, std::log(a.d0), r, -r * r, 2.0 * r * r * r);
}

/// Integer power by repeated multiplication; domain-safe for any base.
inline Jet3 powi(const Jet3& a, long long n) {
    if (n < 0) return reciprocal(powi(a, -n));
    Jet3 result = Jet3::constant(1.0);
    Jet3 base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

/// Non-integer exponents route through exp/log and require base > 0;
/// constant integer exponents use repeated multiplication.
inline Jet3 pow(const Jet3& base, const Jet3& expo) {
    const bool const_expo = expo.d1 == 0.0 && expo.d2 == 0.0 && expo.d3 == 0.0;
    if (const_expo && expo.d0 == std::floor(expo.d0) && std::abs(expo.d0) < 1e9) {
        return powi(base, static_cast<long long>(expo.d0));
    }
    return exp(expo * log(base));
}

}  // namespace rr
