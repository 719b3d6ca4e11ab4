#pragma once

#include <cmath>

#include "nigwh/complex.hpp"
#include "nigwh/errors.hpp"
#include "nigwh/real.hpp"

namespace nigwh {

/// NIG process parameters (theta, sigma, kappa, mu): Brownian motion with
/// drift theta and diffusion sigma, subordinated by an inverse Gaussian
/// process of unit mean rate and variance kappa, plus linear drift mu.
template <typename Real>
struct NigParams {
    Real theta{};
    Real sigma{};
    Real kappa{};
    Real mu{};

    void validate() const {
        if (!(sigma > 0)) throw DomainError("NigParams: sigma must be > 0");
        if (!(kappa > 0)) throw DomainError("NigParams: kappa must be > 0 (finite)");
    }

    template <typename Other>
    NigParams<Other> cast() const {
        return {Other(to_double(theta)), Other(to_double(sigma)), Other(to_double(kappa)),
                Other(to_double(mu))};
    }
};

/// Distinguished points of q - psi_X(z): the branch points rho_hat < 0 < rho
/// of the square root and the candidate roots zeta, zeta_hat of the
/// associated quadratic p(z) = r(z)^2, with discriminant d.
template <typename Real>
struct RootSet {
    Real rho{}, rho_hat{};
    Cplx<Real> zeta, zeta_hat;
    Real d{};
    bool zeta_solves = false;
    bool zeta_hat_solves = false;
};

enum class PlusCase { I, II, III };
enum class MinusCase { A, B, C };

struct CaseLabel {
    PlusCase plus_case;
    MinusCase minus_case;
    bool operator==(const CaseLabel&) const = default;
};

struct RootTolerances {
    double case_rel = 1e-12;  // |zeta - rho| <= case_rel * max(1, |rho|) declares case III
    double imag_rel = 1e-12;  // |Im zeta| <= imag_rel * max(1, |zeta|) declares zeta real
};

/// p(z) = 1 - 2*kappa*theta*z - kappa*sigma^2*z^2 = (1 - z/rho)(1 - z/rho_hat).
template <typename Real>
Cplx<Real> quadratic_p(const NigParams<Real>& p, const Cplx<Real>& z) {
    return Cplx<Real>(Real(1)) - z * (2 * p.kappa * p.theta) - z * z * (p.kappa * p.sigma * p.sigma);
}

/// Laplace exponent psi_X(z) = 1/kappa - sqrt(p(z))/kappa + mu*z with the
/// principal square-root branch; analytic on C minus the two cuts.
template <typename Real>
Cplx<Real> laplace_exponent(const NigParams<Real>& p, const Cplx<Real>& z) {
    return Cplx<Real>(1 / p.kappa) - sqrt(quadratic_p(p, z)) / Cplx<Real>(p.kappa) + z * p.mu;
}

template <typename Real>
Real laplace_exponent(const NigParams<Real>& p, const Real& z) {
    return real_part(laplace_exponent(p, Cplx<Real>(z)));
}

/// psi_X'(z) = theta + sigma^2 z / sqrt(p(z)) ... written via the chain rule
/// on the subordination form; valid off the cuts.
template <typename Real>
Cplx<Real> laplace_exponent_derivative(const NigParams<Real>& p, const Cplx<Real>& z) {
    Cplx<Real> root = sqrt(quadratic_p(p, z));
    Cplx<Real> num = Cplx<Real>(p.theta) + z * (p.sigma * p.sigma);
    return num / root + Cplx<Real>(p.mu);
}

/// Zeros rho > 0 > rho_hat of p(z).
template <typename Real>
std::pair<Real, Real> characteristic_roots(const NigParams<Real>& p) {
    using std::sqrt;
    p.validate();
    Real s = sqrt(p.theta * p.theta + p.sigma * p.sigma / p.kappa);
    return {(-p.theta + s) / (p.sigma * p.sigma), (-p.theta - s) / (p.sigma * p.sigma)};
}

namespace detail {

/// A candidate root solves psi_X(z) = q iff it is real, lies inside
/// [rho_hat, 0) u (0, rho], the discriminant is positive, and
/// q - 1/kappa <= mu*z0 (the squared equation keeps the right branch).
template <typename Real>
bool solves(const NigParams<Real>& p, const Real& q, const Cplx<Real>& z0, const Real& rho,
            const Real& rho_hat, const Real& d, const RootTolerances& tol) {
    using std::fabs;
    double az = std::max(1.0, to_double(abs(z0)));
    if (std::fabs(to_double(imag_part(z0))) > tol.imag_rel * az) return false;
    if (!(d > 0)) return false;
    Real x = real_part(z0);
    if (x == 0) return false;
    if (!(rho_hat <= x && x <= rho)) return false;
    return q - 1 / p.kappa <= p.mu * x;
}

}  // namespace detail

/// Candidate roots zeta, zeta_hat of psi_X(z) = q and their solution status.
/// For q = 0 the pair {0, -2(theta+mu)/(kappa mu^2 + sigma^2)} is assigned by
/// the sign of theta + mu (zeta keeps the nonnegative slot when theta+mu<0).
template <typename Real>
RootSet<Real> zeta_roots(const NigParams<Real>& p, const Real& q, const RootTolerances& tol = {}) {
    using std::sqrt;
    p.validate();
    if (q < 0) throw DomainError("zeta_roots: q must be >= 0");
    RootSet<Real> rs;
    std::tie(rs.rho, rs.rho_hat) = characteristic_roots(p);
    Real denom = p.kappa * p.mu * p.mu + p.sigma * p.sigma;
    if (q == 0) {
        Real drift = p.theta + p.mu;
        Real other = -2 * drift / denom;
        rs.d = drift * drift;
        if (drift > 0) {
            rs.zeta = Cplx<Real>(Real(0));
            rs.zeta_hat = Cplx<Real>(other);
        } else {
            rs.zeta = Cplx<Real>(other);
            rs.zeta_hat = Cplx<Real>(Real(0));
        }
    } else {
        rs.d = p.theta * p.theta + p.mu * p.mu - 2 * p.theta * p.mu * (q * p.kappa - 1) +
               q * p.sigma * p.sigma * (2 - q * p.kappa);
        Cplx<Real> sq = sqrt(Cplx<Real>(rs.d));
        Cplx<Real> base(-p.theta - p.mu + p.kappa * p.mu * q);
        rs.zeta = (base + sq) / Cplx<Real>(denom);
        rs.zeta_hat = (base - sq) / Cplx<Real>(denom);
    }
    rs.zeta_solves = detail::solves(p, q, rs.zeta, rs.rho, rs.rho_hat, rs.d, tol);
    rs.zeta_hat_solves = detail::solves(p, q, rs.zeta_hat, rs.rho, rs.rho_hat, rs.d, tol);
    return rs;
}

/// True iff z0 (one of the computed zeta, zeta_hat) solves psi_X(z) = q.
template <typename Real>
bool is_solution(const NigParams<Real>& p, const Real& q, const Cplx<Real>& z0,
                 const RootTolerances& tol = {}) {
    RootSet<Real> rs = zeta_roots(p, q, tol);
    return detail::solves(p, q, z0, rs.rho, rs.rho_hat, rs.d, tol);
}

/// Case classification of the factorization: III/C when the quadratic root
/// coincides with the branch point (within tolerance), II/B when it solves
/// psi_X = q, I/A otherwise.
template <typename Real>
CaseLabel classify_case(const NigParams<Real>& p, const Real& q, const RootTolerances& tol = {}) {
    RootSet<Real> rs = zeta_roots(p, q, tol);
    CaseLabel label{PlusCase::I, MinusCase::A};

    double zre = to_double(real_part(rs.zeta)), zim = to_double(imag_part(rs.zeta));
    double rho = to_double(rs.rho);
    if (std::fabs(zim) <= tol.imag_rel * std::max(1.0, std::fabs(zre)) &&
        std::fabs(zre - rho) <= tol.case_rel * std::max(1.0, std::fabs(rho)))
        label.plus_case = PlusCase::III;
    else if (rs.zeta_solves)
        label.plus_case = PlusCase::II;

    double hre = to_double(real_part(rs.zeta_hat)), him = to_double(imag_part(rs.zeta_hat));
    double rho_hat = to_double(rs.rho_hat);
    if (std::fabs(him) <= tol.imag_rel * std::max(1.0, std::fabs(hre)) &&
        std::fabs(hre - rho_hat) <= tol.case_rel * std::max(1.0, std::fabs(rho_hat)))
        label.minus_case = MinusCase::C;
    else if (rs.zeta_hat_solves)
        label.minus_case = MinusCase::B;

    return label;
}

/// Phi_q(z) = psi_X'(z) / (q - psi_X(z)), the log-derivative of the killed
/// characteristic function.  Validation oracle for cumulants of X_e(q).
template <typename Real>
Cplx<Real> phi_q(const NigParams<Real>& p, const Real& q, const Cplx<Real>& z) {
    if (!(q > 0)) throw DomainError("phi_q: q must be > 0");
    Cplx<Real> denom = Cplx<Real>(q) - laplace_exponent(p, z);
    if (to_double(abs(denom)) < 1e-300 * std::max(1.0, to_double(q)))
        throw PoleError("phi_q: evaluation at a pole of Phi_q");
    return laplace_exponent_derivative(p, z) / denom;
}

/// Drift making e^{-rt} A_0 e^{X_t} a martingale: solves psi_X(1) = r for mu.
template <typename Real>
Real risk_neutral_mu(const Real& theta, const Real& sigma, const Real& kappa, const Real& r) {
    using std::sqrt;
    Real rad = 1 - 2 * kappa * theta - kappa * sigma * sigma;
    if (!(rad >= 0)) throw DomainError("risk_neutral_mu: z = 1 lies on the spectral cut");
    return r - 1 / kappa + sqrt(rad) / kappa;
}

}  // namespace nigwh
