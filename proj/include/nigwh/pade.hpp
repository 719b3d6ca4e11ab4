#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nigwh/distributions.hpp"
#include "nigwh/moments.hpp"

namespace nigwh {

enum class PadeSource { cgf_deriv, mgf };

/// [n-1/n] Pade approximant P_{n-1}/Q_n at the working precision.
template <typename Real>
struct PadeApproximant {
    std::vector<Real> numer;  // a_0 .. a_{n-1}
    std::vector<Real> denom;  // b_0 = 1, b_1 .. b_n
    int n = 0;
    PadeSource source = PadeSource::mgf;

    Cplx<Real> numer_at(const Cplx<Real>& z) const { return horner(numer, z); }
    Cplx<Real> denom_at(const Cplx<Real>& z) const { return horner(denom, z); }
    Cplx<Real> denom_derivative_at(const Cplx<Real>& z) const {
        Cplx<Real> acc(Real(0));
        for (int i = static_cast<int>(denom.size()) - 1; i >= 1; --i)
            acc = acc * z + Cplx<Real>(denom[i] * i);
        return acc;
    }

    static Cplx<Real> horner(const std::vector<Real>& coeffs, const Cplx<Real>& z) {
        Cplx<Real> acc(Real(0));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + Cplx<Real>(*it);
        return acc;
    }
};

namespace detail {

/// Gaussian elimination with partial pivoting at the working precision.
/// Throws SingularSystemError when a pivot falls below the singularity
/// threshold relative to the matrix scale.
template <typename Real>
std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> rhs) {
    using std::fabs;
    const int n = static_cast<int>(A.size());
    double scale = 0;
    for (const auto& row : A)
        for (const auto& v : row) scale = std::max(scale, std::fabs(to_double(v)));
    if (scale == 0) throw SingularSystemError("solve_dense: zero matrix");
    const double digits = precision_digits<Real>();
    const double log_threshold = std::log10(scale) - 0.75 * digits;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(Cplx<Real>(A[r][col])) > abs(Cplx<Real>(A[pivot][col]))) pivot = r;
        if (pivot != col) {
            std::swap(A[pivot], A[col]);
            std::swap(rhs[pivot], rhs[col]);
        }
        double pv = std::fabs(to_double(A[col][col]));
        if (pv == 0 || std::log10(pv) < log_threshold)
            throw SingularSystemError("Hankel system numerically singular at this precision (n too large)");
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            Real f = A[r][col] / A[col][col];
            for (int k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Real> x(n, Real(0));
    for (int r = n - 1; r >= 0; --r) {
        Real s = rhs[r];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

}  // namespace detail

/// Solves the [n-1/n] order conditions: the Hankel system [c_{i+j}] b = -c_{n+i}
/// determines Q_n (with Q_n(0) = 1), then the numerator follows by convolution
/// a_m = sum_{j<=m} b_j c_{m-j}.  Consumes c_0..c_{2n-1}; extra coefficients
/// are accepted and ignored.
template <typename Real>
PadeApproximant<Real> pade_n_minus_1_n(const std::vector<Real>& c, int n,
                                       PadeSource source = PadeSource::mgf) {
    if (n < 1) throw DomainError("pade_n_minus_1_n: n >= 1 required");
    if (static_cast<int>(c.size()) < 2 * n)
        throw DomainError("pade_n_minus_1_n: need at least 2n Taylor coefficients");
    std::vector<std::vector<Real>> H(n, std::vector<Real>(n));
    std::vector<Real> rhs(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) H[i][j] = c[i + j];
        rhs[i] = -c[n + i];
    }
    std::vector<Real> y = detail::solve_dense(std::move(H), std::move(rhs));  // (b_n, ..., b_1)

    PadeApproximant<Real> pa;
    pa.n = n;
    pa.source = source;
    pa.denom.assign(n + 1, Real(0));
    pa.denom[0] = Real(1);
    for (int k = 1; k <= n; ++k) pa.denom[k] = y[n - k];
    pa.numer.assign(n, Real(0));
    for (int m = 0; m < n; ++m) {
        Real s = c[m];
        for (int j = 1; j <= m; ++j) s += pa.denom[j] * c[m - j];
        pa.numer[m] = s;
    }
    return pa;
}

/// Taylor coefficients of P - f Q through z^{2n-1}; all vanish at the working
/// precision when the order conditions hold.
template <typename Real>
std::vector<Real> pade_order_residual(const PadeApproximant<Real>& pa, const std::vector<Real>& c) {
    std::vector<Real> res(2 * pa.n, Real(0));
    for (int m = 0; m < 2 * pa.n; ++m) {
        Real s = (m < pa.n) ? pa.numer[m] : Real(0);
        for (int j = 0; j <= std::min(m, pa.n); ++j) s -= pa.denom[j] * c[m - j];
        res[m] = s;
    }
    return res;
}

namespace detail {

/// Aberth starting points from the Newton polygon (upper convex hull of
/// (i, log|q_i|)), radii per hull segment with staggered angles.
template <typename Real>
std::vector<Cplx<Real>> aberth_start(const std::vector<Real>& q) {
    using std::log;
    const int n = static_cast<int>(q.size()) - 1;
    std::vector<std::pair<int, double>> pts;
    for (int i = 0; i <= n; ++i) {
        Real m = abs(Cplx<Real>(q[i]));
        if (to_double(m) > 0 || i == 0 || i == n) {
            double lg = (to_double(m) > 0) ? to_double(log(m)) : -1e12;
            pts.emplace_back(i, lg);
        }
    }
    std::vector<std::pair<int, double>> hull;  // upper convex hull
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it lies below segment a-pt
            if ((b.second - a.second) * (pt.first - a.first) <=
                (pt.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<Cplx<Real>> z;
    z.reserve(n);
    const double two_pi = 2 * pi_value<double>();
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        int i1 = hull[s].first, i2 = hull[s + 1].first;
        double r = std::exp((hull[s].second - hull[s + 1].second) / (i2 - i1));
        int count = i2 - i1;
        for (int j = 0; j < count; ++j) {
            double ang = two_pi * j / count + two_pi * i2 / std::max(1, n) + 0.7;
            z.emplace_back(Real(r * std::cos(ang)), Real(r * std::sin(ang)));
        }
    }
    while (static_cast<int>(z.size()) < n) z.emplace_back(Real(1), Real(1));
    return z;
}

}  // namespace detail

/// All roots of the real polynomial q_0 + q_1 z + ... + q_n z^n by
/// Aberth-Ehrlich simultaneous iteration at the working precision.
template <typename Real>
std::vector<Cplx<Real>> polynomial_roots(const std::vector<Real>& q) {
    using std::pow;
    if (q.empty() || q.back() == 0) throw DomainError("polynomial_roots: leading coefficient must be nonzero");
    if (q[0] == 0) {
        // Factor out exact zero roots first.
        std::size_t shift = 0;
        while (shift + 1 < q.size() && q[shift] == 0) ++shift;
        std::vector<Real> reduced(q.begin() + shift, q.end());
        std::vector<Cplx<Real>> roots = polynomial_roots(reduced);
        roots.insert(roots.end(), shift, Cplx<Real>(Real(0)));
        return roots;
    }
    const int n = static_cast<int>(q.size()) - 1;
    if (n == 0) return {};
    if (n == 1) return {Cplx<Real>(-q[0] / q[1])};

    std::vector<Cplx<Real>> z = detail::aberth_start(q);
    const unsigned digits = precision_digits<Real>();
    const Real tol = pow(Real(10), -static_cast<int>(digits > 12 ? digits - 8 : 4));
    const int max_iter = 500;

    std::vector<Cplx<Real>> qd(q.size() - 1);
    for (int i = 1; i <= n; ++i) qd[i - 1] = Cplx<Real>(q[i] * i);
    auto eval = [&](const std::vector<Cplx<Real>>& coeffs, const Cplx<Real>& x) {
        Cplx<Real> acc(Real(0));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    std::vector<Cplx<Real>> qc(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) qc[i] = Cplx<Real>(q[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_small = true;
        for (int i = 0; i < n; ++i) {
            Cplx<Real> pv = eval(qc, z[i]);
            if (to_double(abs(pv)) == 0) continue;
            Cplx<Real> dv = eval(qd, z[i]);
            if (to_double(abs(dv)) == 0) {
                z[i] += Cplx<Real>(tol + Real(1) / 1000);  // nudge off a critical point
                all_small = false;
                continue;
            }
            Cplx<Real> newton = pv / dv;
            Cplx<Real> repulsion(Real(0));
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Cplx<Real> diff = z[i] - z[j];
                if (to_double(abs(diff)) == 0) diff = Cplx<Real>(tol, tol);
                repulsion += Cplx<Real>(Real(1)) / diff;
            }
            Cplx<Real> denom = Cplx<Real>(Real(1)) - newton * repulsion;
            Cplx<Real> step = (to_double(abs(denom)) == 0) ? newton : newton / denom;
            z[i] -= step;
            if (abs(step) > tol * (1 + abs(z[i]))) all_small = false;
        }
        if (all_small) return z;
    }
    throw ConvergenceError("polynomial_roots: Aberth iteration did not converge at this precision");
}

namespace detail {

template <typename Real>
struct PoleResidue {
    Real location;
    Real strength;
};

/// Poles of the approximant with residue-derived strengths; validates
/// realness (10^{-P/2} relative) and positivity of location and strength.
template <typename Real, typename Error>
std::vector<PoleResidue<Real>> extract_poles(const PadeApproximant<Real>& pa, const Real& R,
                                             bool divide_by_pole, const char* what) {
    using std::pow;
    const unsigned digits = precision_digits<Real>();
    const Real imag_tol = pow(Real(10), -static_cast<int>(digits / 2));
    std::vector<Cplx<Real>> roots = polynomial_roots(pa.denom);
    std::vector<PoleResidue<Real>> out;
    out.reserve(roots.size());
    for (const auto& root : roots) {
        if (!(abs(Cplx<Real>(imag_part(root))) <= imag_tol * (1 + abs(root))))
            throw Error(std::string(what) + ": complex denominator root (precision exhausted)");
        Real beta = real_part(root);
        Cplx<Real> res = -(pa.numer_at(root) / pa.denom_derivative_at(root));
        Real strength = real_part(res);
        if (divide_by_pole) strength /= beta;
        if (!(strength > 0))
            throw Error(std::string(what) + ": nonpositive residue (precision exhausted)");
        if (!(beta > R * (1 - 1e-8)))
            throw Error(std::string(what) + ": pole fell below the radius of convergence");
        out.push_back({beta, strength});
    }
    std::sort(out.begin(), out.end(),
              [](const PoleResidue<Real>& x, const PoleResidue<Real>& y) { return x.location < y.location; });
    return out;
}

}  // namespace detail

/// Gamma-convolution approximation: the [n-1/n] approximant of psi'(z) =
/// sum m_{k+1} z^k has simple poles beta_i > R with residues giving shapes
/// alpha_i; MGF = prod (1 - z/beta_i)^{-alpha_i}.
template <typename Real>
GammaConvolution<Real> gamma_convolution_from_cgf(const MomentSequence<Real>& mom, int n, const Real& R) {
    if (!mom.ggc) throw NotGGCError("gamma_convolution_from_cgf: Thorin measure has a negative part");
    if (static_cast<int>(mom.m.size()) < 2 * n)
        throw DomainError("gamma_convolution_from_cgf: need m_1..m_{2n}");
    std::vector<Real> c(mom.m.begin(), mom.m.begin() + 2 * n);  // c_k = m_{k+1}
    PadeApproximant<Real> pa = pade_n_minus_1_n(c, n, PadeSource::cgf_deriv);
    auto poles = detail::extract_poles<Real, NonPositiveResidueError>(pa, R, false,
                                                                      "gamma_convolution_from_cgf");
    GammaConvolution<Real> g;
    for (auto& pr : poles) g.components.push_back({pr.strength, pr.location});
    return g;
}

/// Exponential-mixture approximation: the [n-1/n] approximant of the MGF
/// phi(z) = sum (mu_k/k!) z^k is itself the MGF of a finite mixture; weights
/// are interpolatory at zero, so they sum to one.
template <typename Real>
ExponentialMixture<Real> exp_mixture_from_mgf(const MomentSequence<Real>& mom, int n, const Real& R) {
    if (static_cast<int>(mom.mu_raw.size()) < 2 * n)
        throw DomainError("exp_mixture_from_mgf: need mu_0..mu_{2n-1}");
    std::vector<Real> c(2 * n);
    Real kfact(1);
    for (int k = 0; k < 2 * n; ++k) {
        if (k > 0) kfact *= k;
        c[k] = mom.mu_raw[k] / kfact;
    }
    PadeApproximant<Real> pa = pade_n_minus_1_n(c, n, PadeSource::mgf);
    auto poles = detail::extract_poles<Real, NegativeWeightError>(pa, R, true, "exp_mixture_from_mgf");
    ExponentialMixture<Real> e;
    Real total(0);
    for (auto& pr : poles) {
        e.components.push_back({pr.strength, pr.location});
        total += pr.strength;
    }
    using std::pow;
    const Real sum_tol = pow(Real(10), -static_cast<int>(precision_digits<Real>() / 2));
    if (!(abs(Cplx<Real>(total - 1)) <= sum_tol))
        throw NegativeWeightError("exp_mixture_from_mgf: weights failed to sum to one (precision exhausted)");
    return e;
}

}  // namespace nigwh
