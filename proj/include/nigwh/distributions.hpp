#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "nigwh/measure.hpp"

namespace nigwh {

/// Finite convolution of independent gamma distributions Gamma(alpha_i, beta_i).
template <typename Real>
struct GammaConvolution {
    struct Component {
        Real alpha;  // shape
        Real beta;   // rate
    };
    std::vector<Component> components;

    GammaConvolution<double> to_double() const {
        GammaConvolution<double> g;
        for (const auto& comp : components)
            g.components.push_back({nigwh::to_double(comp.alpha), nigwh::to_double(comp.beta)});
        return g;
    }
};

/// Finite mixture of exponentials with weights omega_i and rates eta_i.
template <typename Real>
struct ExponentialMixture {
    struct Component {
        Real omega;  // weight
        Real eta;    // rate
    };
    std::vector<Component> components;

    ExponentialMixture<double> to_double() const {
        ExponentialMixture<double> e;
        for (const auto& comp : components)
            e.components.push_back({nigwh::to_double(comp.omega), nigwh::to_double(comp.eta)});
        return e;
    }
};

/// MGF of the gamma convolution: prod (1 - z/beta_i)^{-alpha_i}, principal
/// powers; finite for Re(z) < min beta_i.
template <typename Real>
Cplx<Real> gc_mgf(const GammaConvolution<Real>& g, const Cplx<Real>& z) {
    Cplx<Real> acc(Real(0));
    for (const auto& comp : g.components) {
        if (real_part(z) >= comp.beta && imag_part(z) == 0)
            throw DomainError("gc_mgf: z outside the convergence strip");
        acc -= log(Cplx<Real>(Real(1)) - z / Cplx<Real>(comp.beta)) * comp.alpha;
    }
    return exp(acc);
}

/// MGF of the exponential mixture: sum eta_i omega_i / (eta_i - z).
template <typename Real>
Cplx<Real> me_mgf(const ExponentialMixture<Real>& e, const Cplx<Real>& z) {
    Cplx<Real> acc(Real(0));
    for (const auto& comp : e.components) {
        Cplx<Real> denom = Cplx<Real>(comp.eta) - z;
        if (to_double(abs(denom)) == 0) throw PoleError("me_mgf: z equals a mixture rate");
        acc += Cplx<Real>(comp.eta * comp.omega) / denom;
    }
    return acc;
}

/// F(x) = sum omega_i (1 - e^{-eta_i x}).
template <typename Real>
Real me_cdf(const ExponentialMixture<Real>& e, const Real& x) {
    using std::exp;
    if (x < 0) throw DomainError("me_cdf: x must be >= 0");
    Real acc(0);
    for (const auto& comp : e.components) acc += comp.omega * (1 - exp(-comp.eta * x));
    return acc;
}

/// f(x) = sum omega_i eta_i e^{-eta_i x}.
template <typename Real>
Real me_density(const ExponentialMixture<Real>& e, const Real& x) {
    using std::exp;
    if (!(x > 0)) throw DomainError("me_density: x must be > 0");
    Real acc(0);
    for (const auto& comp : e.components) acc += comp.omega * comp.eta * exp(-comp.eta * x);
    return acc;
}

template <typename Real>
Real me_mean(const ExponentialMixture<Real>& e) {
    Real acc(0);
    for (const auto& comp : e.components) acc += comp.omega / comp.eta;
    return acc;
}

namespace detail {

/// exp( int log(u/(u-w)) tau(du) ) for a canonical Thorin measure, atoms
/// included.  Principal logs are safe off the support ray: for real w left of
/// the support every u - w stays positive, and for Im(w) != 0 the path of
/// u - w is a horizontal line that never crosses the cut, so the integral is
/// the analytic continuation used on the inversion contour.
template <typename Real>
Cplx<Real> factor_from_thorin(const SpectralMeasure<Real>& tau, const Cplx<Real>& w,
                              const QuadratureOptions& opts) {
    Real radius = measure_radius(tau);
    const double on_axis_tol = 1e-14 * (1 + to_double(abs(w)));
    if (std::fabs(to_double(imag_part(w))) <= on_axis_tol &&
        !(real_part(w) < radius * (1 - 1e-12)))
        throw BranchError("exact_factor: z lies on the spectral support ray");
    Cplx<Real> acc(Real(0));
    for (const auto& atom : tau.atoms) {
        Cplx<Real> loc(atom.location);
        acc += log(loc / (loc - w)) * Real(atom.sign) * atom.weight;
    }
    if (tau.has_continuous_part())
        acc += integrate_density(tau, [&](const Real& u) {
            Cplx<Real> uu(u);
            return log(uu / (uu - w));
        }, opts);
    return exp(acc);
}

}  // namespace detail

/// The Wiener-Hopf factor phi_q^{+-}(z) by exact quadrature against the
/// Thorin measure: E[e^{z S_e(q)}] for the plus side, E[e^{z I_e(q)}] for the
/// minus side.  q = 0 gives the overall-extremum factor when the drift sign
/// admits it.
template <typename Real>
Cplx<Real> exact_factor(const NigParams<Real>& p, const Real& q, Side side, const Cplx<Real>& z,
                        const QuadratureOptions& opts = {}, const RootTolerances& tol = {}) {
    SpectralMeasure<Real> tau = thorin_measure(p, q, side, tol);
    Cplx<Real> w = (side == Side::plus) ? z : -z;
    return detail::factor_from_thorin(tau, w, opts);
}

/// Fixed-Talbot numerical Laplace inversion recovering the CDF of a
/// nonnegative random variable from its MGF evaluator.  M nodes; double
/// precision arithmetic throughout.  The contour radius r = 2*M_c/(5t) is
/// decoupled from the node count: e^{rt} amplifies roundoff, so M_c is
/// capped at the double-precision optimum while extra nodes only sharpen
/// the trapezoid truncation.
class TalbotInverter {
  public:
    explicit TalbotInverter(int nodes = 64, int contour_m = 26)
        : M_(nodes), Mc_(std::min(nodes, contour_m)) {}

    /// Inverts L[F](s) = mgf(-s)/s at t > 0.
    double cdf_at(const std::function<Cplx<double>(const Cplx<double>&)>& mgf, double t) const {
        if (t <= 0) return 0.0;
        const double pi = pi_value<double>();
        const double r = 2.0 * Mc_ / (5.0 * t);
        auto f = [&](const Cplx<double>& s) { return mgf(-s) / s; };
        double acc = 0.5 * real_part(f(Cplx<double>(r))) * std::exp(r * t);
        for (int k = 1; k < M_; ++k) {
            double th = k * pi / M_;
            double cot = std::cos(th) / std::sin(th);
            Cplx<double> s(r * th * cot, r * th);
            double sigma = th + (th * cot - 1.0) * cot;
            Cplx<double> term = exp(Cplx<double>(s.re * t, s.im * t)) * f(s) * Cplx<double>(1.0, sigma);
            acc += real_part(term);
        }
        return acc * r / M_;
    }

  private:
    int M_;
    int Mc_;
};

/// CDF values on a grid by fixed-Talbot inversion of the given MGF.  Each
/// value is validated to lie in [-eps, 1+eps] (eps = 1e-6) before being
/// clamped to [0, 1]; violations raise ConvergenceError.
inline std::vector<double> laplace_invert_cdf(
    const std::function<Cplx<double>(const Cplx<double>&)>& mgf, const std::vector<double>& x_grid,
    int nodes = 64) {
    TalbotInverter talbot(nodes);
    std::vector<double> out;
    out.reserve(x_grid.size());
    const double eps = 1e-6;
    for (double x : x_grid) {
        double v = talbot.cdf_at(mgf, x);
        if (!std::isfinite(v) || v < -eps || v > 1 + eps)
            throw ConvergenceError("laplace_invert_cdf: inversion left [0,1] beyond tolerance at x=" +
                                   std::to_string(x));
        out.push_back(std::min(1.0, std::max(0.0, v)));
    }
    return out;
}

}  // namespace nigwh
