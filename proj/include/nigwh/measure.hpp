#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "nigwh/nig.hpp"
#include "nigwh/quadrature.hpp"

namespace nigwh {

enum class Side { plus, minus };
enum class Family { mu, nu, lambda, atoms_only };

template <typename Real>
struct Atom {
    Real location;
    Real weight;  // 1 or 1/2
    int sign;     // +1 or -1
};

/// Spectral measure on a half line: a symbolic continuous density family plus
/// signed atoms.  Doubles as the Thorin measure tau once mirrored to the
/// positive half line.  With P(u) = (u - support_edge)(u - far_root):
///   mu family:      a (b u - c) / (pi (u - pole1)(u - pole2) sqrt(P(u)))
///   nu family:      a b / (pi (u - pole2) sqrt(P(u)))
///   lambda family:  a b / (pi (u - pole1) sqrt(P(u)))
/// supported right of the edge when support_edge > far_root, left otherwise.
template <typename Real>
struct SpectralMeasure {
    Family family;
    Side side;
    Real a{}, b{}, c{};
    Real support_edge{};
    Real far_root{};
    Cplx<Real> pole1, pole2;  // zeta slot / zeta-hat slot (negated when mirrored)
    std::vector<Atom<Real>> atoms;
    bool mirrored = false;  // true once pushed forward to the positive half line

    // Jordan-part bookkeeping: sub-support window and overall negation.
    std::optional<Real> clip_lo, clip_hi;
    bool negated = false;

    bool rightward() const { return support_edge > far_root; }

    bool in_support(const Real& u) const {
        if (rightward() ? !(u > support_edge) : !(u < support_edge)) return false;
        if (clip_lo && !(u > *clip_lo)) return false;
        if (clip_hi && !(u < *clip_hi)) return false;
        return true;
    }

    /// Signed continuous density at u (0 outside the support / clip window).
    Real density(const Real& u) const {
        if (family == Family::atoms_only || !in_support(u)) return Real(0);
        return density_at_edge_distance(u, u - support_edge);
    }

    /// Density with the (signed) distance to the support edge supplied
    /// exactly; quadrature uses this to keep the 1/sqrt edge singularity at
    /// full precision.  No support checks.
    Real density_at_edge_distance(const Real& u, const Real& u_minus_edge) const {
        using std::sqrt;
        Real root = sqrt(u_minus_edge * (u - far_root));
        Real num, den;
        if (family == Family::mu) {
            Real s = real_part(pole1 + pole2), pr = real_part(pole1 * pole2);
            num = a * (b * u - c);
            den = pi_value<Real>() * (u * u - s * u + pr) * root;
        } else {
            const Cplx<Real>& pole = (family == Family::nu) ? pole2 : pole1;
            num = a * b;
            den = pi_value<Real>() * (u - real_part(pole)) * root;
        }
        Real v = num / den;
        return negated ? -v : v;
    }

    bool has_continuous_part() const {
        if (family == Family::atoms_only) return false;
        if (clip_lo && clip_hi && !(*clip_lo < *clip_hi)) return false;
        if (family == Family::mu) return b != 0 || c != 0;
        return b != 0;
    }

    bool empty() const { return atoms.empty() && !has_continuous_part(); }
};

/// The density constants a, b, c of the spectral measures; a > 0 always.
template <typename Real>
std::tuple<Real, Real, Real> abc_constants(const NigParams<Real>& p, const Real& q) {
    using std::sqrt;
    p.validate();
    Real a = 1 / (p.sigma * p.kappa * sqrt(p.kappa) * (p.mu * p.mu + p.sigma * p.sigma / p.kappa));
    Real b = p.theta * p.mu * p.kappa + (q * p.kappa - 1) * p.sigma * p.sigma;
    Real c = p.mu - p.theta * (q * p.kappa - 1);
    return {a, b, c};
}

namespace detail {

template <typename Real>
void check_q0_side(const NigParams<Real>& p, const Real& q, Side side) {
    if (q != 0) return;
    Real drift = p.theta + p.mu;
    if (side == Side::plus && !(drift < 0))
        throw DomainError("q=0 plus side requires theta+mu < 0 (S_inf is a.s. infinite)");
    if (side == Side::minus && !(drift > 0))
        throw DomainError("q=0 minus side requires theta+mu > 0 (I_inf is a.s. infinite)");
}

}  // namespace detail

/// The spectral measure omega_q of the chosen Wiener-Hopf factor, in natural
/// coordinates: plus side on (rho, inf), minus side on (-inf, rho_hat).
/// Family and atoms are selected by the case classification; when a quadratic
/// root collides with a branch point the matching pole factor drops out of
/// the density (nu/lambda families) and a half-weight atom appears there.
template <typename Real>
SpectralMeasure<Real> omega_measure(const NigParams<Real>& p, const Real& q, Side side,
                                    const RootTolerances& tol = {}) {
    detail::check_q0_side(p, q, side);
    RootSet<Real> rs = zeta_roots(p, q, tol);
    CaseLabel cl = classify_case(p, q, tol);
    auto [a, b, c] = abc_constants(p, q);
    const bool q0 = (q == 0);
    const Real half = Real(1) / 2;

    SpectralMeasure<Real> m;
    m.side = side;
    m.a = a;
    m.b = b;
    m.c = c;
    m.pole1 = rs.zeta;
    m.pole2 = rs.zeta_hat;
    if (side == Side::plus) {
        m.support_edge = rs.rho;
        m.far_root = rs.rho_hat;
        if (q0) {
            // q = 0: full-weight atom at zeta(0) when it solves, and the
            // boundary case zeta(0) = rho keeps weight 1 (unlike q > 0).
            if (cl.plus_case == PlusCase::III) {
                m.family = Family::nu;
                m.atoms.push_back({real_part(rs.zeta), Real(1), +1});
            } else {
                m.family = Family::mu;
                if (rs.zeta_solves) m.atoms.push_back({real_part(rs.zeta), Real(1), +1});
            }
        } else if (cl.plus_case == PlusCase::III && cl.minus_case == MinusCase::C) {
            m.family = Family::atoms_only;
            m.atoms.push_back({rs.rho, half, +1});
        } else if (cl.plus_case == PlusCase::III) {
            m.family = Family::nu;
            m.atoms.push_back({rs.rho, half, +1});
        } else {
            m.family = (cl.minus_case == MinusCase::C) ? Family::lambda : Family::mu;
            if (cl.plus_case == PlusCase::II) m.atoms.push_back({real_part(rs.zeta), Real(1), +1});
        }
    } else {
        m.support_edge = rs.rho_hat;
        m.far_root = rs.rho;
        if (q0) {
            if (cl.minus_case == MinusCase::C) {
                m.family = Family::lambda;
                m.atoms.push_back({real_part(rs.zeta_hat), Real(1), -1});
            } else {
                m.family = Family::mu;
                if (rs.zeta_hat_solves) m.atoms.push_back({real_part(rs.zeta_hat), Real(1), -1});
            }
        } else if (cl.minus_case == MinusCase::C && cl.plus_case == PlusCase::III) {
            m.family = Family::atoms_only;
            m.atoms.push_back({rs.rho_hat, half, -1});
        } else if (cl.minus_case == MinusCase::C) {
            m.family = Family::lambda;
            m.atoms.push_back({rs.rho_hat, half, -1});
        } else {
            m.family = (cl.plus_case == PlusCase::III) ? Family::nu : Family::mu;
            if (cl.minus_case == MinusCase::B) m.atoms.push_back({real_part(rs.zeta_hat), Real(1), -1});
        }
    }
    return m;
}

/// Pushforward under x -> -x with all signs flipped; an involution on the
/// stored fields.  Maps the natural minus measure onto the positive half
/// line: a(bu - c) at -u, negated, becomes a(bu + c), so c flips.
template <typename Real>
SpectralMeasure<Real> mirror_negate(SpectralMeasure<Real> m) {
    m.support_edge = -m.support_edge;
    m.far_root = -m.far_root;
    m.pole1 = -m.pole1;
    m.pole2 = -m.pole2;
    m.c = -m.c;
    for (auto& atom : m.atoms) {
        atom.location = -atom.location;
        atom.sign = -atom.sign;
    }
    auto lo = m.clip_lo, hi = m.clip_hi;
    m.clip_lo = hi ? std::optional<Real>(-*hi) : std::nullopt;
    m.clip_hi = lo ? std::optional<Real>(-*lo) : std::nullopt;
    m.mirrored = !m.mirrored;
    return m;
}

/// Thorin measure tau_q: the plus-side omega unchanged, the minus side
/// mirrored and negated onto (-rho_hat, inf).
template <typename Real>
SpectralMeasure<Real> thorin_measure(const NigParams<Real>& p, const Real& q, Side side,
                                     const RootTolerances& tol = {}) {
    SpectralMeasure<Real> omega = omega_measure(p, q, side, tol);
    if (side == Side::plus) return omega;
    return mirror_negate(std::move(omega));
}

/// Radius of convergence of the CGF of S_e(q) (plus) or -I_e(q) (minus):
/// the solving root when there is one, the branch point otherwise.
template <typename Real>
Real radius_of_convergence(const NigParams<Real>& p, const Real& q, Side side,
                           const RootTolerances& tol = {}) {
    detail::check_q0_side(p, q, side);
    RootSet<Real> rs = zeta_roots(p, q, tol);
    if (side == Side::plus) return rs.zeta_solves ? real_part(rs.zeta) : rs.rho;
    return rs.zeta_hat_solves ? -real_part(rs.zeta_hat) : -rs.rho_hat;
}

/// Smallest singularity location of a canonical measure: min of the support
/// edge and the atom locations.
template <typename Real>
Real measure_radius(const SpectralMeasure<Real>& m) {
    std::optional<Real> r;
    if (m.has_continuous_part()) r = m.support_edge;
    for (const auto& atom : m.atoms)
        if (!r || atom.location < *r) r = atom.location;
    if (!r) throw DomainError("measure_radius: empty measure");
    return *r;
}

template <typename Real>
struct JordanPair {
    SpectralMeasure<Real> positive_part;
    SpectralMeasure<Real> negative_part;
    std::optional<Real> crossover;  // root c/b of the sign line, when it exists
};

/// Splits at the exact sign change of the line l(u) = b u - c (mu family) or
/// by the constant numerator sign (one-pole families); atoms route by sign.
/// positive_part - negative_part reproduces the measure pointwise.
template <typename Real>
JordanPair<Real> jordan_decomposition(const SpectralMeasure<Real>& m) {
    JordanPair<Real> jp{m, m, std::nullopt};
    auto& pos = jp.positive_part;
    auto& neg = jp.negative_part;
    pos.atoms.clear();
    neg.atoms.clear();
    for (const auto& atom : m.atoms) {
        if ((atom.sign > 0) != m.negated)
            pos.atoms.push_back({atom.location, atom.weight, +1});
        else
            neg.atoms.push_back({atom.location, atom.weight, +1});
    }
    neg.negated = !m.negated;

    auto kill_density = [&](SpectralMeasure<Real>& part) {
        part.clip_lo = part.clip_hi = m.support_edge;
    };
    if (!m.has_continuous_part()) {
        kill_density(pos);
        kill_density(neg);
        return jp;
    }

    // On the support the pole and sqrt factors have a fixed sign: positive on
    // the right of the edge, and for the one-pole families negative on the
    // left (single (u - pole) factor with pole >= rho_hat >= u).
    int ambient = m.rightward() ? +1 : (m.family == Family::mu ? +1 : -1);
    if (m.negated) ambient = -ambient;

    if (m.family != Family::mu || m.b == 0) {
        Real num_sign_src = (m.family == Family::mu) ? -m.c : m.b;
        bool positive = (num_sign_src > 0) == (ambient > 0);
        kill_density(positive ? neg : pos);
        return jp;
    }

    Real ustar = m.c / m.b;
    jp.crossover = ustar;
    // l(u) = b (u - ustar): l < 0 below ustar when b > 0, above when b < 0.
    bool low_is_negative = ((m.b > 0) == (ambient > 0));
    SpectralMeasure<Real>& below = low_is_negative ? neg : pos;
    SpectralMeasure<Real>& above = low_is_negative ? pos : neg;
    below.clip_hi = below.clip_hi ? std::min(*below.clip_hi, ustar) : ustar;
    above.clip_lo = above.clip_lo ? std::max(*above.clip_lo, ustar) : ustar;
    // Degenerate windows (crossover outside the support) collapse to empty.
    if (m.rightward()) {
        if (!(ustar > m.support_edge)) kill_density(below);
    } else {
        if (!(ustar < m.support_edge)) kill_density(above);
    }
    return jp;
}

/// GGC criterion: the law with Thorin measure m is a generalized gamma
/// convolution iff the Jordan decomposition has no negative part.
template <typename Real>
bool is_ggc(const SpectralMeasure<Real>& m) {
    return jordan_decomposition(m).negative_part.empty();
}

namespace detail {

/// Integral of kernel(u) * density(u) over the (possibly clipped) support of
/// a canonical measure (positive support edge required).  The distance to the
/// singular support edge is propagated exactly into the density.
template <typename Real, typename F>
auto integrate_density(const SpectralMeasure<Real>& m, F&& kernel, const QuadratureOptions& opts) {
    using Value = decltype(kernel(std::declval<Real>()) * std::declval<Real>());
    if (!m.rightward() || !(m.support_edge > 0))
        throw DomainError("integrate_density: canonical (positive half-line) measure required");
    Value zero{};
    if (!m.has_continuous_part()) return zero;
    Real lo = m.clip_lo ? std::max(*m.clip_lo, m.support_edge) : m.support_edge;
    const Real shift = lo - m.support_edge;  // 0 when the window starts at the edge
    auto f = [&](const Real& u, const Real& from_lo) {
        return kernel(u) * m.density_at_edge_distance(u, from_lo + shift);
    };
    if (m.clip_hi) {
        if (!(lo < *m.clip_hi)) return zero;
        return integrate_interval_edge<Real>(f, lo, *m.clip_hi, opts);
    }
    return integrate_half_line_edge<Real>(f, lo, opts);
}

}  // namespace detail

/// Levy density of the Wiener-Hopf factor: pi(x) = (1/x) int e^{-xu} m(du),
/// for x matching the side of the (natural-coordinates) measure.
template <typename Real>
Real levy_density(const SpectralMeasure<Real>& m, const Real& x, const QuadratureOptions& opts = {}) {
    using std::exp;
    if (x == 0) throw DomainError("levy_density: x must be nonzero");
    const bool plus_support = m.rightward();
    if (plus_support && !(x > 0)) throw DomainError("levy_density: x must be > 0 for this measure");
    if (!plus_support && !(x < 0)) throw DomainError("levy_density: x must be < 0 for this measure");

    // Mirror a leftward measure (pure pushforward, no sign flip) so the
    // quadrature runs over a positive half line; e^{-xu} becomes e^{-(-x)v}.
    SpectralMeasure<Real> canon = m;
    Real xs = x;
    if (!plus_support) {
        canon = mirror_negate(m);
        canon.negated = !canon.negated;
        for (auto& atom : canon.atoms) atom.sign = -atom.sign;
        xs = -x;
    }
    Real acc = detail::integrate_density(canon, [&](const Real& u) { return exp(-xs * u); }, opts);
    for (const auto& atom : canon.atoms) acc += atom.sign * atom.weight * exp(-xs * atom.location);
    return acc / x;
}

}  // namespace nigwh
