#pragma once

#include <cmath>
#include <type_traits>
#include <utility>

#include "nigwh/complex.hpp"
#include "nigwh/errors.hpp"
#include "nigwh/real.hpp"

namespace nigwh {

/// Tanh-sinh (double-exponential) quadrature parameters.  The defaults match
/// the reference configuration h = 2^-7, p = 60.
struct QuadratureOptions {
    double step = 1.0 / 128;   // node spacing h
    int target_digits = 60;    // truncation target p (decimal digits)
};

namespace detail {

template <typename T> double magnitude(const T& x) { return std::fabs(to_double(x)); }
template <typename R> double magnitude(const Cplx<R>& x) { return to_double(abs(x)); }

template <typename T> bool finite(const T& x) { return std::isfinite(to_double(x)); }
template <typename R> bool finite(const Cplx<R>& x) {
    return std::isfinite(to_double(x.re)) && std::isfinite(to_double(x.im));
}

/// Core tanh-sinh loop.  The integrand is called as f(x, d) where d is the
/// exact distance from the node to its nearest endpoint (d = 1 - |x|,
/// computed cancellation-free as 2/(e^{2s}+1)); integrable endpoint
/// singularities should be evaluated through d.  Nodes whose weight
/// underflows, or whose contribution stays below the 10^-p target for
/// several consecutive levels, terminate the expansion.
template <typename Real, typename F>
auto tanh_sinh_core(F&& f, Real h, int target_digits) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    using Value = decltype(f(std::declval<Real>(), std::declval<Real>()));

    const Real half_pi = pi_value<Real>() / 2;
    const double cutoff_log10 = -(target_digits + 5);

    Value f0 = f(Real(0), Real(1));  // j = 0: x = 0, weight h*pi/2
    if (!detail::finite(f0)) throw NonFiniteError("tanh_sinh: non-finite integrand at interior node");
    Value acc = f0 * (h * half_pi);
    double acc_mag = detail::magnitude(acc) + 1e-300;

    int stale = 0;
    const int max_j = static_cast<int>(to_double(Real(10) / h)) + 1;
    for (int j = 1; j <= max_j && stale < 4; ++j) {
        Real t = j * h;
        Real s = half_pi * sinh(t);
        Real e2s = exp(2 * s);
        Real d = 2 / (e2s + 1);  // 1 - tanh(s), exact
        Real x = 1 - d;
        Real w = h * half_pi * cosh(t) / (cosh(s) * cosh(s));
        if (to_double(w) == 0.0 || to_double(d) == 0.0) break;
        double term_mag = 0;
        for (int side = 0; side < 2; ++side) {
            Value fx = side == 0 ? f(x, d) : f(-x, d);
            if (!detail::finite(fx)) {
                if (to_double(d) > 1e-3)
                    throw NonFiniteError("tanh_sinh: non-finite integrand at interior node");
                continue;  // blow-up inside the endpoint boundary layer: drop the node
            }
            Value term = fx * w;
            acc += term;
            term_mag += detail::magnitude(term);
        }
        acc_mag = std::max(acc_mag, detail::magnitude(acc) + 1e-300);
        if (std::log10(term_mag + 1e-300) - std::log10(acc_mag) < cutoff_log10)
            ++stale;
        else
            stale = 0;
    }
    return acc;
}

}  // namespace detail

/// Integrates f over (-1, 1) with tanh-sinh nodes x_j = tanh(pi/2 sinh(jh)),
/// truncating once node contributions fall below the 10^-p target.  Endpoint
/// singularities of integrable type are handled by the double-exponential
/// weight decay.  Throws NonFiniteError if f is non-finite away from the
/// endpoints.  The integrand may take a second argument receiving the exact
/// distance 1 - |x| to the nearest endpoint, which singular integrands should
/// use to avoid cancellation there.
template <typename Real, typename F>
auto tanh_sinh(F&& f, Real h, int target_digits) {
    if constexpr (std::is_invocable_v<F&, const Real&, const Real&>) {
        return detail::tanh_sinh_core<Real>(std::forward<F>(f), h, target_digits);
    } else {
        return detail::tanh_sinh_core<Real>([&](const Real& x, const Real&) { return f(x); }, h,
                                            target_digits);
    }
}

template <typename Real, typename F>
auto tanh_sinh(F&& f, const QuadratureOptions& opts = {}) {
    return tanh_sinh<Real>(std::forward<F>(f), Real(opts.step), opts.target_digits);
}

/// Integrates kernel(u) * singular(u - edge, u) over (edge, inf), edge > 0,
/// through u = 2*edge/(1+v).  The distance u - edge = edge*d/(1+v) reaches
/// the integrand exactly, so inverse-sqrt edge singularities keep full
/// precision.
template <typename Real, typename F>
auto integrate_half_line_edge(F&& f, Real edge, const QuadratureOptions& opts = {}) {
    if (!(edge > 0)) throw DomainError("integrate_half_line: edge must be positive");
    auto g = [&](const Real& v, const Real& d) {
        Real one_plus = (v < 0) ? d : 1 + v;       // exact near v = -1
        Real one_minus = (v < 0) ? 2 - d : d;      // exact near v = +1
        Real u = 2 * edge / one_plus;
        Real u_minus_edge = edge * one_minus / one_plus;
        Real jac = 2 * edge / (one_plus * one_plus);
        return f(u, u_minus_edge) * jac;
    };
    return detail::tanh_sinh_core<Real>(g, Real(opts.step), opts.target_digits);
}

/// Integrates f(u, u - lo) over the finite interval (lo, hi) by a linear map;
/// the lower-edge distance is passed through exactly.
template <typename Real, typename F>
auto integrate_interval_edge(F&& f, Real lo, Real hi, const QuadratureOptions& opts = {}) {
    Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
    auto g = [&](const Real& v, const Real& d) {
        Real from_lo = (v < 0) ? half * d : half * (1 + v);
        return f(lo + from_lo, from_lo) * half;
    };
    return detail::tanh_sinh_core<Real>(g, Real(opts.step), opts.target_digits);
}

template <typename Real, typename F>
auto integrate_half_line(F&& f, Real edge, const QuadratureOptions& opts = {}) {
    return integrate_half_line_edge([&](const Real& u, const Real&) { return f(u); }, edge, opts);
}

template <typename Real, typename F>
auto integrate_interval(F&& f, Real lo, Real hi, const QuadratureOptions& opts = {}) {
    return integrate_interval_edge([&](const Real& u, const Real&) { return f(u); }, lo, hi, opts);
}

}  // namespace nigwh
