#pragma once

#include <vector>

#include "nigwh/measure.hpp"

namespace nigwh {

/// M_k = int_R^inf x^{-k} / sqrt((x-C)(x-R)) dx for C < 0 < R, via the
/// antiderivative recursion for L_k with Q(x) = x^2 - (C+R)x + CR evaluated
/// between R (a root of Q, where sqrt(Q) vanishes) and infinity.
template <typename Real>
std::vector<Real> stieltjes_power_integrals(int kmax, const Real& C, const Real& R) {
    using std::atan;
    using std::sqrt;
    if (!(C < 0) || !(R > 0)) throw DomainError("stieltjes_power_integral: need C < 0 < R");
    if (kmax < 1) throw DomainError("stieltjes_power_integral: k >= 1 required");
    const Real a = C * R;          // Q(0) < 0
    const Real b = -(C + R);
    std::vector<Real> M(kmax + 1);
    Real sq = sqrt(-a);
    M[1] = (atan(b / (2 * sq)) + pi_value<Real>() / 2) / sq;
    if (kmax >= 2) M[2] = -1 / a - b / (2 * a) * M[1];
    for (int k = 3; k <= kmax; ++k)
        M[k] = -(2 * k - 3) * b / (2 * (k - 1) * a) * M[k - 1] - Real(k - 2) / ((k - 1) * a) * M[k - 2];
    return M;
}

template <typename Real>
Real stieltjes_power_integral(int k, const Real& C, const Real& R) {
    return stieltjes_power_integrals(k, C, R)[k];
}

/// int_R^inf dx / ((x-J) sqrt((x-C)(x-R))) for real J strictly between C and
/// R; the shift x -> x + J reduces it to the k = 1 power integral.
template <typename Real>
Real pole_integral_real(const Real& J, const Real& C, const Real& R) {
    if (!((C - J) * (R - J) < 0))
        throw DomainError("pole_integral_real: pole must lie strictly between C and R");
    return stieltjes_power_integral(1, C - J, R - J);
}

/// int_R^inf dx / ((x-D) sqrt((x-C)(x-R))) for D off the real axis, via the
/// Euler substitution sqrt(P(x)) = x + t which rationalizes the integrand
/// over t in (-R, -(C+R)/2).
template <typename Real>
Cplx<Real> pole_integral_complex(const Cplx<Real>& D, const Real& C, const Real& R) {
    if (imag_part(D) == 0) throw DomainError("pole_integral_complex: D must be non-real");
    Cplx<Real> rad = sqrt((D - Cplx<Real>(C)) * (D - Cplx<Real>(R)));
    Cplx<Real> rp = -D + rad, rm = -D - rad;
    Cplx<Real> t1(-(C + R) / 2), t0(-R);
    return (log(t1 - rp) - log(t0 - rp) - log(t1 - rm) + log(t0 - rm)) * (Cplx<Real>(Real(2)) / (rp - rm));
}

template <typename Real>
struct PartialFractionCoeffs {
    std::vector<Cplx<Real>> a1;  // a_{1,0} .. a_{1,k-1}
    Cplx<Real> a20, a21;
};

/// Coefficients of (Ax+B)/(x^k (x-D)(x-E)) = sum_{j=1..k} a_{1,k-j}/x^j
///   + (a_{2,1} x + a_{2,0})/((x-D)(x-E)).
/// The a_{1,j} are the Taylor coefficients of (Ax+B)/((x-D)(x-E)) at zero and
/// satisfy the three-term recursion in (D+E) and DE.
template <typename Real>
PartialFractionCoeffs<Real> partial_fraction_coeffs(const Cplx<Real>& A, const Cplx<Real>& B,
                                                    const Cplx<Real>& D, const Cplx<Real>& E, int k) {
    if (k < 1) throw DomainError("partial_fraction_coeffs: k >= 1 required");
    if (to_double(abs(D)) == 0 || to_double(abs(E)) == 0)
        throw DomainError("partial_fraction_coeffs: zero pole (merge it into the power instead)");
    if (to_double(abs(A)) == 0 && to_double(abs(B)) == 0)
        throw DomainError("partial_fraction_coeffs: numerator is identically zero");
    Cplx<Real> s = D + E, pr = D * E;
    PartialFractionCoeffs<Real> out;
    out.a1.reserve(k);
    out.a1.push_back(B / pr);
    if (k >= 2) out.a1.push_back(A / pr + B * s / (pr * pr));
    for (int j = 2; j < k; ++j) out.a1.push_back((out.a1[j - 1] * s - out.a1[j - 2]) / pr);
    if (k == 1)
        out.a20 = A + s * out.a1[0];
    else
        out.a20 = s * out.a1[k - 1] - out.a1[k - 2];
    out.a21 = -out.a1[k - 1];
    return out;
}

namespace detail {

/// Closed-form continuous contribution to the k-th negative moment of a
/// canonical measure, given the shared power-integral table M (size >= k+2).
template <typename Real>
Real continuous_negative_moment(const SpectralMeasure<Real>& m, int k, const std::vector<Real>& M) {
    using std::pow;
    const Real C = m.far_root, R = m.support_edge;
    const Real a_over_pi = m.a / pi_value<Real>();

    if (m.family != Family::mu) {
        // a b / (pi (u - J) sqrt(P(u))), J real by construction (III / C cases).
        const Cplx<Real>& pole = (m.family == Family::nu) ? m.pole2 : m.pole1;
        Real J = real_part(pole);
        Real I;
        if (J == 0) {
            I = M[k + 1];
        } else {
            // 1/(x^k (x-J)) = J^{-k}/(x-J) - sum_j J^{j-k-1}/x^j
            I = pole_integral_real(J, C, R) / pow(J, k);
            for (int j = 1; j <= k; ++j) I -= M[j] * pow(J, j - k - 1);
        }
        return a_over_pi * m.b * I;
    }

    const Real A = m.b, B = -m.c;
    const bool real_poles = imag_part(m.pole1) == 0 && imag_part(m.pole2) == 0;
    if (real_poles) {
        Real D = real_part(m.pole1), E = real_part(m.pole2);
        if (D == 0 || E == 0) {
            // A zero pole merges with the power: (Au+B)/(u^{k+1}(u-J)).
            Real J = (D == 0) ? E : D;
            if (J == 0) throw DomainError("negative_moment: both poles vanish (theta+mu = 0)");
            Real I = (A * J + B) / pow(J, k + 1) * pole_integral_real(J, C, R);
            for (int j = 1; j <= k + 1; ++j) {
                Real Bj = -B / pow(J, k + 2 - j);
                if (j <= k) Bj -= A / pow(J, k + 1 - j);
                I += Bj * M[j];
            }
            return a_over_pi * I;
        }
        auto pf = partial_fraction_coeffs(Cplx<Real>(A), Cplx<Real>(B), Cplx<Real>(D), Cplx<Real>(E), k);
        Real I(0);
        for (int j = 1; j <= k; ++j) I += real_part(pf.a1[k - j]) * M[j];
        Real a20 = real_part(pf.a20), a21 = real_part(pf.a21);
        if (D == E) {
            // Double pole: shift u -> u + D and use the L_1, L_2 forms directly.
            auto Ms = stieltjes_power_integrals(2, C - D, R - D);
            I += a21 * Ms[1] + (a21 * D + a20) * Ms[2];
        } else {
            Real rD = (a21 * D + a20) / (D - E);
            Real rE = (a21 * E + a20) / (E - D);
            I += rD * pole_integral_real(D, C, R) + rE * pole_integral_real(E, C, R);
        }
        return a_over_pi * I;
    }

    // Conjugate pole pair: the a_{1,j} recursion stays real (D+E, DE real);
    // the two pole integrals combine to twice a real part.
    auto pf = partial_fraction_coeffs(Cplx<Real>(A), Cplx<Real>(B), m.pole1, m.pole2, k);
    Real I(0);
    for (int j = 1; j <= k; ++j) I += real_part(pf.a1[k - j]) * M[j];
    // The mirrored pole integral is the conjugate, so the pair sums to twice
    // the real part; the combination is exactly real by construction.
    Cplx<Real> rD = (pf.a21 * m.pole1 + pf.a20) / (m.pole1 - m.pole2);
    Cplx<Real> pair = rD * pole_integral_complex(m.pole1, C, R);
    I += 2 * real_part(pair);
    return a_over_pi * I;
}

template <typename Real>
void require_thorin(const SpectralMeasure<Real>& m) {
    if (!m.rightward() || !(m.support_edge > 0) || m.negated || m.clip_lo || m.clip_hi)
        throw DomainError("negative_moment: canonical Thorin measure (positive half line) required");
    for (const auto& atom : m.atoms)
        if (!(atom.location > 0)) throw DomainError("negative_moment: atom at a nonpositive location");
}

}  // namespace detail

/// Negative moments m_1..m_kmax of a canonical Thorin measure, computed in
/// closed form (no numerical quadrature anywhere).
template <typename Real>
std::vector<Real> negative_moments(const SpectralMeasure<Real>& m, int kmax) {
    using std::pow;
    if (kmax < 1) throw DomainError("negative_moments: kmax >= 1 required");
    detail::require_thorin(m);
    std::vector<Real> out(kmax, Real(0));
    std::vector<Real> M;
    if (m.has_continuous_part())
        M = stieltjes_power_integrals(kmax + 1, m.far_root, m.support_edge);
    for (int k = 1; k <= kmax; ++k) {
        Real v(0);
        for (const auto& atom : m.atoms) v += atom.sign * atom.weight * pow(atom.location, -k);
        if (m.has_continuous_part()) v += detail::continuous_negative_moment(m, k, M);
        out[k - 1] = v;
    }
    return out;
}

template <typename Real>
Real negative_moment(const SpectralMeasure<Real>& m, int k) {
    return negative_moments(m, k)[k - 1];
}

/// Exact negative moments of tau with the derived cumulants kappa_k =
/// (k-1)! m_k and raw moments mu_k of the corresponding distribution.
template <typename Real>
struct MomentSequence {
    std::vector<Real> m;          // m_1 .. m_K
    std::vector<Real> kappa_cum;  // kappa_1 .. kappa_K
    std::vector<Real> mu_raw;     // mu_0 = 1, mu_1 .. mu_K
    int K = 0;
    bool ggc = true;
};

/// Fills mu_raw from m via mu_k = (k-1)! m_k
///   + sum_{j=1}^{k-1} C(k-1, j-1) (j-1)! m_j mu_{k-j}, with mu_0 = 1.
template <typename Real>
MomentSequence<Real> cumulants_to_moments(MomentSequence<Real> seq) {
    seq.K = static_cast<int>(seq.m.size());
    seq.kappa_cum.resize(seq.K);
    for (int k = 1; k <= seq.K; ++k) seq.kappa_cum[k - 1] = factorial<Real>(k - 1) * seq.m[k - 1];
    seq.mu_raw.assign(seq.K + 1, Real(0));
    seq.mu_raw[0] = Real(1);
    for (int k = 1; k <= seq.K; ++k) {
        Real s = factorial<Real>(k - 1) * seq.m[k - 1];
        for (int j = 1; j < k; ++j)
            s += binomial<Real>(k - 1, j - 1) * factorial<Real>(j - 1) * seq.m[j - 1] * seq.mu_raw[k - j];
        seq.mu_raw[k] = s;
    }
    return seq;
}

/// Moment sequence of a canonical Thorin measure up to order K.
template <typename Real>
MomentSequence<Real> moment_sequence(const SpectralMeasure<Real>& m, int K) {
    MomentSequence<Real> seq;
    seq.m = negative_moments(m, K);
    seq.ggc = is_ggc(m);
    return cumulants_to_moments(std::move(seq));
}

}  // namespace nigwh
