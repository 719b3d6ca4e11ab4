#pragma once

#include <json.hpp>

#include "nigwh/applications.hpp"
#include "nigwh/validation.hpp"

namespace nigwh {
namespace detail {

inline std::string decimal_string(double x, unsigned digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", std::min(digits, 17u), x);
    return buf;
}

inline std::string decimal_string(const BigReal& x, unsigned digits) { return x.str(digits); }

}  // namespace detail

inline const char* to_string(Family f) {
    switch (f) {
        case Family::mu: return "mu";
        case Family::nu: return "nu";
        case Family::lambda: return "lambda";
        case Family::atoms_only: return "atoms_only";
    }
    return "?";
}

inline const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

inline const char* to_string(PlusCase c) {
    switch (c) {
        case PlusCase::I: return "I";
        case PlusCase::II: return "II";
        case PlusCase::III: return "III";
    }
    return "?";
}

inline const char* to_string(MinusCase c) {
    switch (c) {
        case MinusCase::A: return "A";
        case MinusCase::B: return "B";
        case MinusCase::C: return "C";
    }
    return "?";
}

template <typename Real>
nlohmann::json to_json(const Cplx<Real>& z) {
    return {{"re", to_double(z.re)}, {"im", to_double(z.im)}};
}

template <typename Real>
nlohmann::json to_json(const RootSet<Real>& rs) {
    return {{"rho", to_double(rs.rho)},
            {"rho_hat", to_double(rs.rho_hat)},
            {"zeta", to_json(rs.zeta)},
            {"zeta_hat", to_json(rs.zeta_hat)},
            {"d", to_double(rs.d)},
            {"zeta_solves", rs.zeta_solves},
            {"zeta_hat_solves", rs.zeta_hat_solves}};
}

inline nlohmann::json to_json(const CaseLabel& cl) {
    return {{"plus_case", to_string(cl.plus_case)}, {"minus_case", to_string(cl.minus_case)}};
}

template <typename Real>
nlohmann::json to_json(const SpectralMeasure<Real>& m) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& atom : m.atoms)
        atoms.push_back({{"location", to_double(atom.location)},
                         {"weight", to_double(atom.weight)},
                         {"sign", atom.sign}});
    return {{"family", to_string(m.family)},
            {"side", to_string(m.side)},
            {"mirrored", m.mirrored},
            {"a", to_double(m.a)},
            {"b", to_double(m.b)},
            {"c", to_double(m.c)},
            {"support_edge", to_double(m.support_edge)},
            {"far_root", to_double(m.far_root)},
            {"pole1", to_json(m.pole1)},
            {"pole2", to_json(m.pole2)},
            {"atoms", atoms}};
}

/// Full-precision decimal strings when digits > 0, doubles otherwise.
template <typename Real>
nlohmann::json to_json(const GammaConvolution<Real>& g, unsigned digits = 0) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : g.components) {
        if (digits > 0)
            comps.push_back({{"alpha", detail::decimal_string(comp.alpha, digits)},
                             {"beta", detail::decimal_string(comp.beta, digits)}});
        else
            comps.push_back({{"alpha", to_double(comp.alpha)}, {"beta", to_double(comp.beta)}});
    }
    return {{"kind", "gamma_convolution"}, {"components", comps}};
}

template <typename Real>
nlohmann::json to_json(const ExponentialMixture<Real>& e, unsigned digits = 0) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : e.components) {
        if (digits > 0)
            comps.push_back({{"omega", detail::decimal_string(comp.omega, digits)},
                             {"eta", detail::decimal_string(comp.eta, digits)}});
        else
            comps.push_back({{"omega", to_double(comp.omega)}, {"eta", to_double(comp.eta)}});
    }
    return {{"kind", "exponential_mixture"}, {"components", comps}};
}

template <typename Real>
nlohmann::json to_json(const RuinReport<Real>& r, unsigned digits = 0) {
    return {{"gamma", to_double(r.gamma)},
            {"C", to_double(r.C)},
            {"n", r.n},
            {"me_approx", to_json(r.me_approx, digits)}};
}

template <typename Real>
nlohmann::json to_json(const OptionQuote<Real>& q) {
    return {{"C_factor", to_double(q.C_factor)},
            {"boundary", to_double(q.boundary)},
            {"value", to_double(q.value)},
            {"n", q.n},
            {"risk_neutral_gap", to_double(q.risk_neutral_gap)}};
}

}  // namespace nigwh
