#pragma once

#include <cmath>
#include <utility>

#include "nigwh/pade.hpp"

namespace nigwh {

/// Cramer ruin asymptotics R(x) ~ C e^{-gamma x} plus the finite-mixture
/// approximation of the ruin probability.
template <typename Real>
struct RuinReport {
    Real gamma{};  // Cramer exponent, -zeta_hat(0)
    Real C{};      // Cramer constant, in (0, 1]
    ExponentialMixture<Real> me_approx;
    int n = 0;

    Real asymptotic(const Real& x) const {
        using std::exp;
        return C * exp(-gamma * x);
    }
};

/// Cramer exponent and constant for ruin driven by a NIG process with
/// positive mean drift.  C = exp( int log(u/(u - gamma)) tau_0^-(du) ) taken
/// against the continuous part of tau_0^-: the Mordecki limit removes the
/// simple-pole factor contributed by the atom at gamma.  When n > 0 the
/// report also carries the q = 0 minus-side mixture of order n.
template <typename Real>
RuinReport<Real> cramer_constant(const NigParams<Real>& p, int n = 0,
                                 const QuadratureOptions& opts = {}, const RootTolerances& tol = {}) {
    using std::exp;
    using std::log;
    p.validate();
    if (!(p.theta + p.mu > 0))
        throw DomainError("cramer_constant: theta + mu must be > 0 for a finite infimum");
    RootSet<Real> rs = zeta_roots(p, Real(0), tol);
    bool boundary = std::fabs(to_double(real_part(rs.zeta_hat)) - to_double(rs.rho_hat)) <=
                    tol.case_rel * std::max(1.0, std::fabs(to_double(rs.rho_hat)));
    if (!rs.zeta_hat_solves && !boundary)
        throw DomainError("cramer_constant: Cramer's condition fails (zeta_hat(0) does not solve psi_X = 0)");

    RuinReport<Real> report;
    report.gamma = -real_part(rs.zeta_hat);
    SpectralMeasure<Real> tau = thorin_measure(p, Real(0), Side::minus, tol);
    Real gamma = report.gamma;
    Real integral(0);
    if (tau.has_continuous_part())
        integral = detail::integrate_density(tau, [&](const Real& u) { return log(u / (u - gamma)); }, opts);
    report.C = exp(integral);
    report.n = n;
    if (n > 0) {
        MomentSequence<Real> mom = moment_sequence(tau, 2 * n);
        report.me_approx = exp_mixture_from_mgf(mom, n, radius_of_convergence(p, Real(0), Side::minus, tol));
    }
    return report;
}

/// Ruin probability at level x: the Cramer asymptotic C e^{-gamma x} and the
/// mixture value sum omega_i e^{-eta_i x} = 1 - F_{E_n}(x).
template <typename Real>
std::pair<Real, Real> ruin_probability(const NigParams<Real>& p, const Real& x, int n,
                                       const QuadratureOptions& opts = {}, const RootTolerances& tol = {}) {
    using std::exp;
    if (!(x >= 0)) throw DomainError("ruin_probability: x must be >= 0");
    RuinReport<Real> report = cramer_constant(p, n, opts, tol);
    Real me_value(0);
    for (const auto& comp : report.me_approx.components) me_value += comp.omega * exp(-comp.eta * x);
    return {report.asymptotic(x), me_value};
}

/// Perpetual put quote: exact exercise boundary K*C with C = phi_r^-(1), and
/// the mixture-approximated value V_n.
template <typename Real>
struct OptionQuote {
    Real C_factor{};          // phi_r^-(1)
    Real boundary{};          // K * C_factor
    Real value{};             // V_n
    int n = 0;
    Real risk_neutral_gap{};  // |psi_X(1) - r|; > 1e-5 means the quote is not risk neutral
};

/// Value of a perpetual put with strike K and spot A0 under killing rate r.
/// The boundary factor is computed by exact quadrature; the expectation uses
/// the order-n exponential mixture for -I_e(r).
template <typename Real>
OptionQuote<Real> perpetual_put(const NigParams<Real>& p, const Real& r, const Real& K, const Real& A0,
                                int n, const QuadratureOptions& opts = {}, const RootTolerances& tol = {}) {
    using std::log;
    using std::pow;
    p.validate();
    if (!(r > 0)) throw DomainError("perpetual_put: r must be > 0");
    if (!(K > 0) || !(A0 > 0)) throw DomainError("perpetual_put: K and A0 must be > 0");
    if (n < 1) throw DomainError("perpetual_put: n >= 1 required");

    OptionQuote<Real> quote;
    quote.n = n;
    quote.risk_neutral_gap = abs(laplace_exponent(p, Cplx<Real>(Real(1))) - Cplx<Real>(r));

    quote.C_factor = real_part(exact_factor(p, r, Side::minus, Cplx<Real>(Real(1)), opts, tol));
    quote.boundary = K * quote.C_factor;

    SpectralMeasure<Real> tau = thorin_measure(p, r, Side::minus, tol);
    MomentSequence<Real> mom = moment_sequence(tau, 2 * n);
    ExponentialMixture<Real> mixture =
        exp_mixture_from_mgf(mom, n, radius_of_convergence(p, r, Side::minus, tol));

    const Real& C = quote.C_factor;
    Real value(0);
    if (log(C * K / A0) < 0) {
        for (const auto& comp : mixture.components)
            value += comp.omega * pow(C / A0, comp.eta) * pow(K, comp.eta + 1) / (1 + comp.eta);
    } else {
        for (const auto& comp : mixture.components)
            value += comp.omega * (K - A0 / C * comp.eta / (1 + comp.eta));
    }
    quote.value = value;
    return quote;
}

}  // namespace nigwh
