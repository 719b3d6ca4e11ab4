#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "nigwh/pade.hpp"

namespace nigwh {

/// Taylor coefficients of sqrt(1 - 2 kappa theta z - kappa sigma^2 z^2) at 0,
/// by squaring the unknown series against the quadratic.
template <typename Real>
std::vector<Real> sqrt_p_series(const NigParams<Real>& p, int K) {
    std::vector<Real> pc = {Real(1), -2 * p.kappa * p.theta, -p.kappa * p.sigma * p.sigma};
    std::vector<Real> s(K + 1, Real(0));
    s[0] = Real(1);
    for (int k = 1; k <= K; ++k) {
        Real acc = (k < 3) ? pc[k] : Real(0);
        for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / 2;
    }
    return s;
}

/// Taylor coefficients of psi_X(z) at 0 up to order K.
template <typename Real>
std::vector<Real> laplace_exponent_series(const NigParams<Real>& p, int K) {
    std::vector<Real> s = sqrt_p_series(p, K);
    std::vector<Real> out(K + 1, Real(0));
    for (int k = 1; k <= K; ++k) out[k] = -s[k] / p.kappa;
    if (K >= 1) out[1] += p.mu;
    return out;
}

/// Exact derivatives psi_{X_e(q)}^{(k)}(0) = d^k/dz^k log(q/(q - psi_X(z)))
/// at zero, k = 0..K, via series composition of -log(1 - psi_X(z)/q).
template <typename Real>
std::vector<Real> xeq_cumulants(const NigParams<Real>& p, const Real& q, int K) {
    if (!(q > 0)) throw DomainError("xeq_cumulants: q must be > 0");
    std::vector<Real> u = laplace_exponent_series(p, K);
    for (auto& x : u) x /= q;
    std::vector<Real> v(K + 1, Real(0));
    for (int k = 1; k <= K; ++k) {
        Real acc = u[k];
        Real inner(0);
        for (int j = 1; j < k; ++j) inner += j * v[j] * u[k - j];
        v[k] = acc + inner / k;
    }
    std::vector<Real> out(K + 1, Real(0));
    Real kfact(1);
    for (int k = 1; k <= K; ++k) {
        kfact *= k;
        out[k] = kfact * v[k];
    }
    return out;
}

/// Cumulants kappa_1..kappa_K of a finite exponential mixture, via the log of
/// its MGF series (MGF coefficient k is sum_i omega_i eta_i^{-k}).
template <typename Real>
std::vector<Real> me_cumulants(const ExponentialMixture<Real>& e, int K) {
    using std::pow;
    std::vector<Real> w(K + 1, Real(0));
    for (int k = 0; k <= K; ++k)
        for (const auto& comp : e.components) w[k] += comp.omega * pow(comp.eta, -k);
    std::vector<Real> l(K + 1, Real(0));
    for (int k = 1; k <= K; ++k) {
        Real acc = w[k];
        for (int i = 1; i < k; ++i) acc -= Real(k - i) / k * w[i] * l[k - i];
        l[k] = acc;
    }
    std::vector<Real> out(K + 1, Real(0));
    Real kfact(1);
    for (int k = 1; k <= K; ++k) {
        kfact *= k;
        out[k] = kfact * l[k];
    }
    return out;
}

/// Cumulants kappa_1..kappa_K of a gamma convolution: (k-1)! sum alpha_i beta_i^{-k}.
template <typename Real>
std::vector<Real> gc_cumulants(const GammaConvolution<Real>& g, int K) {
    using std::pow;
    std::vector<Real> out(K + 1, Real(0));
    for (int k = 1; k <= K; ++k) {
        Real acc(0);
        for (const auto& comp : g.components) acc += comp.alpha * pow(comp.beta, -k);
        out[k] = factorial<Real>(k - 1) * acc;
    }
    return out;
}

/// Central finite difference of order m with step h (order-h^2 accurate).
/// Meant for cross-checks at extended precision where the h^m cancellation
/// still leaves enough digits.
template <typename Real, typename F>
Real finite_difference(F&& f, const Real& x, int m, const Real& h) {
    Real acc(0);
    for (int i = 0; i <= m; ++i) {
        Real offset = (Real(m) / 2 - i) * h;
        Real term = binomial<Real>(m, i) * f(x + offset);
        acc += (i % 2 == 0) ? term : -term;
    }
    using std::pow;
    return acc / pow(h, m);
}

/// m_k by tanh-sinh quadrature of u^{-k} against the (canonical) measure
/// density plus atom sums; the independent oracle for the closed forms.
template <typename Real>
Real quadrature_moment_oracle(const SpectralMeasure<Real>& m, int k, const QuadratureOptions& opts = {}) {
    using std::pow;
    if (k < 1) throw DomainError("quadrature_moment_oracle: k >= 1 required");
    Real acc(0);
    for (const auto& atom : m.atoms) acc += atom.sign * atom.weight * pow(atom.location, -k);
    if (m.has_continuous_part())
        acc += detail::integrate_density(m, [&](const Real& u) { return pow(u, -k); }, opts);
    return acc;
}

/// Monte Carlo configuration: path step, path count, and RNG seed.
struct McConfig {
    double step = 1e-3;
    long long n_paths = 1000000;
    std::uint64_t seed = 1;
};

/// One increment X_dt: inverse Gaussian subordinator increment U (mean dt,
/// variance kappa dt) by the Michael-Schucany-Haas transform, then
/// theta U + sigma sqrt(U) N + mu dt.
inline double sample_nig_increment(const NigParams<double>& p, double dt, std::mt19937_64& rng) {
    if (!(dt > 0)) throw DomainError("sample_nig_increment: dt must be > 0");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double mu_ig = dt;
    const double lambda_ig = dt * dt / p.kappa;
    double nu = normal(rng);
    double y = nu * nu;
    double x = mu_ig + mu_ig * mu_ig * y / (2 * lambda_ig) -
               mu_ig / (2 * lambda_ig) * std::sqrt(4 * mu_ig * lambda_ig * y + mu_ig * mu_ig * y * y);
    double u = (unif(rng) <= mu_ig / (mu_ig + x)) ? x : mu_ig * mu_ig / x;
    return p.theta * u + p.sigma * std::sqrt(u) * normal(rng) + p.mu * dt;
}

/// Empirical CDFs of S_e(q) and -I_e(q) on the grid, from killed paths with
/// independently drawn exponential horizons.  The final partial step of
/// length e(q) mod step is included.
inline std::pair<std::vector<double>, std::vector<double>> simulate_extrema_cdf(
    const NigParams<double>& p, double q, const McConfig& cfg, const std::vector<double>& grid) {
    if (!(q > 0)) throw DomainError("simulate_extrema_cdf: q must be > 0");
    if (!(cfg.step > 0) || cfg.n_paths < 1) throw DomainError("simulate_extrema_cdf: bad MC config");
    std::mt19937_64 rng(cfg.seed);
    std::exponential_distribution<double> horizon(q);
    std::vector<double> sup_cdf(grid.size(), 0.0), inf_cdf(grid.size(), 0.0);
    for (long long path = 0; path < cfg.n_paths; ++path) {
        double T = horizon(rng);
        long long nsteps = static_cast<long long>(T / cfg.step);
        double rem = T - nsteps * cfg.step;
        double pos = 0, smax = 0, smin = 0;
        for (long long i = 0; i < nsteps; ++i) {
            pos += sample_nig_increment(p, cfg.step, rng);
            smax = std::max(smax, pos);
            smin = std::min(smin, pos);
        }
        if (rem > 0) {
            pos += sample_nig_increment(p, rem, rng);
            smax = std::max(smax, pos);
            smin = std::min(smin, pos);
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (smax <= grid[i]) sup_cdf[i] += 1;
            if (-smin <= grid[i]) inf_cdf[i] += 1;
        }
    }
    for (auto& v : sup_cdf) v /= cfg.n_paths;
    for (auto& v : inf_cdf) v /= cfg.n_paths;
    return {sup_cdf, inf_cdf};
}

/// One row of the cumulant-identity table.
template <typename Real>
struct CumulantRow {
    int k;
    Real psi_deriv;           // d^k/dz^k log(q/(q - psi_X)) at 0
    Real exact;               // kappa_k(S) + (-1)^k kappa_k(-I)
    std::optional<Real> g;    // gamma-convolution column (when both sides are GGC)
    Real e;                   // exponential-mixture column
};

/// Reproduces the cumulant-identity check: psi^{(k)}, the exact column from
/// the closed-form moments, and the order-n G / E approximation columns.
/// The G column is left empty when either Thorin measure is signed.
template <typename Real>
std::vector<CumulantRow<Real>> cumulant_identity_table(const NigParams<Real>& p, const Real& q,
                                                       int k_max, int n,
                                                       const RootTolerances& tol = {}) {
    if (k_max > 2 * n - 1)
        throw DomainError("cumulant_identity_table: k_max must be <= 2n-1 for the approximation columns");
    SpectralMeasure<Real> tau_plus = thorin_measure(p, q, Side::plus, tol);
    SpectralMeasure<Real> tau_minus = thorin_measure(p, q, Side::minus, tol);
    MomentSequence<Real> mom_plus = moment_sequence(tau_plus, 2 * n);
    MomentSequence<Real> mom_minus = moment_sequence(tau_minus, 2 * n);
    Real R_plus = radius_of_convergence(p, q, Side::plus, tol);
    Real R_minus = radius_of_convergence(p, q, Side::minus, tol);

    std::vector<Real> psis = xeq_cumulants(p, q, k_max);

    ExponentialMixture<Real> me_plus = exp_mixture_from_mgf(mom_plus, n, R_plus);
    ExponentialMixture<Real> me_minus = exp_mixture_from_mgf(mom_minus, n, R_minus);
    std::vector<Real> ce_plus = me_cumulants(me_plus, k_max);
    std::vector<Real> ce_minus = me_cumulants(me_minus, k_max);

    std::optional<std::vector<Real>> cg_plus, cg_minus;
    if (mom_plus.ggc && mom_minus.ggc) {
        GammaConvolution<Real> gc_plus = gamma_convolution_from_cgf(mom_plus, n, R_plus);
        GammaConvolution<Real> gc_minus = gamma_convolution_from_cgf(mom_minus, n, R_minus);
        cg_plus = gc_cumulants(gc_plus, k_max);
        cg_minus = gc_cumulants(gc_minus, k_max);
    }

    std::vector<CumulantRow<Real>> rows;
    rows.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        CumulantRow<Real> row{k, psis[k], Real(0), std::nullopt, Real(0)};
        Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
        row.exact = mom_plus.kappa_cum[k - 1] + sign * mom_minus.kappa_cum[k - 1];
        row.e = ce_plus[k] + sign * ce_minus[k];
        if (cg_plus) row.g = (*cg_plus)[k] + sign * (*cg_minus)[k];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nigwh
