#pragma once

#include <cmath>
#include <string>

#include "nigwh/nigwh.hpp"

namespace nigwh::testing {

/// |x - printed| within one unit of the 17th significant printed digit,
/// comparing at the working precision.  One full unit rather than half:
/// the reference values carry occasional last-digit rounding slips (one
/// cumulant row prints ...643 where the exact rational value
/// -150452.690698206424713... rounds to ...642).
inline bool match17(const BigReal& x, const std::string& printed) {
    BigReal ref(printed);
    BigReal diff = x > ref ? x - ref : ref - x;
    double mag = std::fabs(to_double(ref));
    int exp10 = static_cast<int>(std::floor(std::log10(mag)));
    BigReal ulp = pow(BigReal(10), exp10 - 16);
    return diff <= BigReal("1.01") * ulp;
}

template <typename Real>
bool close_rel(const Real& x, const Real& ref, double tol) {
    double xr = to_double(x), rr = to_double(ref);
    return std::fabs(xr - rr) <= tol * std::max({1e-300, std::fabs(rr)});
}

inline bool close_abs(double x, double ref, double tol) { return std::fabs(x - ref) <= tol; }

// Shared reference parameter sets with independently known outputs.

/// (theta, mu, kappa, sigma) = (-1, 7/32, 16, 1) with q = 19/64: case II-A
/// with a signed spectral measure (crossover at 127/8).
template <typename Real>
NigParams<Real> signed_case_params() {
    return {Real(-1), Real(1), Real(16), Real(7) / 32};
}
template <typename Real>
Real signed_case_q() { return Real(19) / 64; }

/// (-1, -4, 187/64, 1) with q = 1: both Thorin measures positive, so the
/// gamma-convolution and mixture routes both apply.
template <typename Real>
NigParams<Real> ggc_case_params() {
    return {Real(-1), Real(1), Real(187) / 64, Real(-4)};
}

/// Ruin set 1: (-1, 3/2, 1, 2) at q = 0; zeta_hat(0) = -0.16 solves.
template <typename Real>
NigParams<Real> ruin_set1_params() {
    return {Real(-1), Real(2), Real(1), Real(3) / 2};
}

/// Ruin set 2: (-1, 4, 1/2, 2) at q = 0; the boundary case zeta_hat(0) = rho_hat.
template <typename Real>
NigParams<Real> ruin_set2_params() {
    return {Real(-1), Real(2), Real(1) / 2, Real(4)};
}

template <typename Real>
Real put_rate() { return Real(1) / 100; }

/// Perpetual-put process: (theta, kappa, sigma) = (-1, 1, 1/4) with the drift
/// solved from psi_X(1) = r, r = 1/100 (the printed 0.723914 is its rounding).
template <typename Real>
NigParams<Real> put_params() {
    Real theta(-1), sigma = Real(1) / 4, kappa(1);
    Real mu = risk_neutral_mu(theta, sigma, kappa, put_rate<Real>());
    return {theta, sigma, kappa, mu};
}

}  // namespace nigwh::testing
