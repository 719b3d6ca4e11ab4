#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "nigwh/real.hpp"

namespace nigwh {

/// Minimal complex number over an arbitrary real type.  std::complex is only
/// specified for the builtin floating types, so the multiprecision paths use
/// this instead; with Real = double it behaves like std::complex<double>.
template <typename Real>
struct Cplx {
    Real re{}, im{};

    Cplx() = default;
    Cplx(Real r) : re(std::move(r)) {}  // NOLINT: implicit by design
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Cplx& operator/=(const Cplx& o);

    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
    friend Cplx operator/(Cplx a, const Cplx& b) { return a /= b; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, const Cplx& z) {
        return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
    }
};

template <typename Real> Real real_part(const Cplx<Real>& z) { return z.re; }
template <typename Real> Real imag_part(const Cplx<Real>& z) { return z.im; }
template <typename Real> Cplx<Real> conj(const Cplx<Real>& z) { return {z.re, -z.im}; }

template <typename Real>
Real abs(const Cplx<Real>& z) {
    using std::hypot;
    return hypot(z.re, z.im);
}

template <typename Real>
Real norm(const Cplx<Real>& z) {
    return z.re * z.re + z.im * z.im;
}

template <typename Real>
Cplx<Real>& Cplx<Real>::operator/=(const Cplx& o) {
    using std::abs;
    // Smith's algorithm keeps the double instantiation overflow-safe.
    if (abs(o.re) >= abs(o.im)) {
        Real r = o.im / o.re;
        Real d = o.re + o.im * r;
        Real nr = (re + im * r) / d;
        im = (im - re * r) / d;
        re = nr;
    } else {
        Real r = o.re / o.im;
        Real d = o.re * r + o.im;
        Real nr = (re * r + im) / d;
        im = (im * r - re) / d;
        re = nr;
    }
    return *this;
}

template <typename Real>
Real arg(const Cplx<Real>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

/// Principal square root.
template <typename Real>
Cplx<Real> sqrt(const Cplx<Real>& z) {
    using std::sqrt;
    if (z.im == 0) {
        if (z.re >= 0) return {sqrt(z.re), Real(0)};
        return {Real(0), sqrt(-z.re)};
    }
    Real m = abs(z);
    if (z.re >= 0) {
        Real u = sqrt((m + z.re) / 2);
        return {u, z.im / (2 * u)};
    }
    Real v = sqrt((m - z.re) / 2);
    if (z.im < 0) v = -v;
    return {z.im / (2 * v), v};
}

/// Principal logarithm.
template <typename Real>
Cplx<Real> log(const Cplx<Real>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

template <typename Real>
Cplx<Real> exp(const Cplx<Real>& z) {
    using std::exp;
    using std::cos;
    using std::sin;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

inline std::complex<double> to_std(const Cplx<double>& z) { return {z.re, z.im}; }
inline std::complex<double> to_std(const Cplx<BigReal>& z) { return {to_double(z.re), to_double(z.im)}; }

template <typename Real>
Cplx<double> to_double_cplx(const Cplx<Real>& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace nigwh
