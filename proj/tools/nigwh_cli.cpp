// Command-line front end: Wiener-Hopf factorization of the NIG process,
// exact moment sequences, Pade mixture approximations, CDF recovery, ruin
// asymptotics, and perpetual put pricing.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "nigwh/nigwh.hpp"
#include "nigwh/serialize.hpp"

using namespace nigwh;
using nlohmann::json;

namespace {

struct Options {
    std::string theta, mu, kappa, sigma;
    std::string q = "0";
    unsigned precision = 500;
    double tol_case = 1e-12;
    std::string output = "json";
    bool full = false;
};

unsigned default_precision() {
    if (const char* env = std::getenv("NIGWH_PRECISION")) {
        int v = std::atoi(env);
        if (v >= 50) return static_cast<unsigned>(v);
    }
    return 500;
}

void add_common(CLI::App* cmd, Options& opt, bool with_q = true) {
    cmd->add_option("--theta", opt.theta, "drift of the subordinated Brownian motion (decimal or p/q)")
        ->required();
    cmd->add_option("--mu", opt.mu, "linear drift (decimal or p/q)")->required();
    cmd->add_option("--kappa", opt.kappa, "subordinator variance (decimal or p/q, > 0)")->required();
    cmd->add_option("--sigma", opt.sigma, "diffusion coefficient (decimal or p/q, > 0)")->required();
    if (with_q) cmd->add_option("--q", opt.q, "killing rate (>= 0; 0 selects the overall extremum)");
    cmd->add_option("--precision", opt.precision, "working precision in decimal digits (>= 50)")
        ->check(CLI::Range(50u, 100000u));
    cmd->add_option("--tol-case", opt.tol_case, "relative tolerance declaring the III/C boundary cases");
    cmd->add_option("--output", opt.output, "output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--full", opt.full, "print full working-precision decimal strings");
}

NigParams<BigReal> params_of(const Options& opt) {
    NigParams<BigReal> p{parse_rational(opt.theta).value<BigReal>(),
                         parse_rational(opt.sigma).value<BigReal>(),
                         parse_rational(opt.kappa).value<BigReal>(),
                         parse_rational(opt.mu).value<BigReal>()};
    p.validate();
    return p;
}

BigReal q_of(const Options& opt) {
    BigReal q = parse_rational(opt.q).value<BigReal>();
    if (q < 0) throw DomainError("q must be >= 0");
    return q;
}

RootTolerances tols_of(const Options& opt) { return {opt.tol_case, opt.tol_case}; }

Side side_of(const std::string& s) {
    if (s == "plus") return Side::plus;
    if (s == "minus") return Side::minus;
    throw DomainError("side must be 'plus' or 'minus'");
}

std::vector<double> parse_grid(const std::string& spec) {
    auto c1 = spec.find(':');
    auto c2 = spec.rfind(':');
    if (c1 == std::string::npos || c2 == c1) throw DomainError("grid must be start:stop:step");
    double start = std::stod(spec.substr(0, c1));
    double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    double step = std::stod(spec.substr(c2 + 1));
    if (!(step > 0) || stop < start) throw DomainError("grid must satisfy start <= stop, step > 0");
    std::vector<double> grid;
    for (double x = start; x <= stop + 1e-12 * step; x += step) grid.push_back(x);
    return grid;
}

std::string fmt(const BigReal& x, const Options& opt) {
    if (opt.full) return x.str(opt.precision);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", to_double(x));
    return buf;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- subcommand bodies ----

int run_roots(const Options& opt) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    auto rs = zeta_roots(p, q_of(opt), tols_of(opt));
    auto cl = classify_case(p, q_of(opt), tols_of(opt));
    json j = to_json(rs);
    j["case"] = to_json(cl);
    if (opt.full) {
        j["zeta"] = {{"re", real_part(rs.zeta).str(opt.precision)},
                     {"im", imag_part(rs.zeta).str(opt.precision)}};
        j["rho"] = rs.rho.str(opt.precision);
    }
    emit(j);
    return 0;
}

int run_classify(const Options& opt) {
    PrecisionGuard guard(opt.precision);
    auto cl = classify_case(params_of(opt), q_of(opt), tols_of(opt));
    emit(to_json(cl));
    return 0;
}

int run_factors(const Options& opt) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    BigReal q = q_of(opt);
    json j;
    for (Side side : {Side::plus, Side::minus}) {
        const char* name = to_string(side);
        try {
            auto omega = omega_measure(p, q, side, tols_of(opt));
            auto tau = thorin_measure(p, q, side, tols_of(opt));
            j[name] = {{"omega", to_json(omega)},
                       {"thorin", to_json(tau)},
                       {"radius", to_double(radius_of_convergence(p, q, side, tols_of(opt)))},
                       {"is_ggc", is_ggc(tau)}};
        } catch (const DomainError& e) {
            j[name] = {{"error", e.what()}};
        }
    }
    emit(j);
    return 0;
}

int run_moments(const Options& opt, const std::string& side, int kmax) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    auto tau = thorin_measure(p, q_of(opt), side_of(side), tols_of(opt));
    auto mom = moment_sequence(tau, kmax);
    std::printf("k,m_k,kappa_k,mu_k\n");
    for (int k = 1; k <= kmax; ++k)
        std::printf("%d,%s,%s,%s\n", k, fmt(mom.m[k - 1], opt).c_str(),
                    fmt(mom.kappa_cum[k - 1], opt).c_str(), fmt(mom.mu_raw[k], opt).c_str());
    return 0;
}

int run_pade(const Options& opt, const std::string& side, const std::string& kind, int n) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    BigReal q = q_of(opt);
    Side s = side_of(side);
    auto tau = thorin_measure(p, q, s, tols_of(opt));
    auto mom = moment_sequence(tau, 2 * n);
    BigReal R = radius_of_convergence(p, q, s, tols_of(opt));
    unsigned digits = opt.full ? opt.precision : 17;
    if (kind == "gc") {
        emit(to_json(gamma_convolution_from_cgf(mom, n, R), digits));
    } else if (kind == "me") {
        emit(to_json(exp_mixture_from_mgf(mom, n, R), digits));
    } else {
        throw DomainError("kind must be 'gc' or 'me'");
    }
    return 0;
}

int run_cdf(const Options& opt, const std::string& side, const std::string& method, int n,
            const std::string& grid_spec, double h, int qd, long long paths, std::uint64_t seed,
            double step) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    BigReal q = q_of(opt);
    Side s = side_of(side);
    std::vector<double> grid = parse_grid(grid_spec);
    QuadratureOptions qopts{h, qd};
    std::vector<double> values;

    if (method == "me" || method == "gc") {
        auto tau = thorin_measure(p, q, s, tols_of(opt));
        auto mom = moment_sequence(tau, 2 * n);
        BigReal R = radius_of_convergence(p, q, s, tols_of(opt));
        if (method == "me") {
            auto me = exp_mixture_from_mgf(mom, n, R).to_double();
            for (double x : grid) values.push_back(x < 0 ? 0.0 : me_cdf(me, x));
        } else {
            auto gc = gamma_convolution_from_cgf(mom, n, R).to_double();
            values = laplace_invert_cdf([&](const Cplx<double>& z) { return gc_mgf(gc, z); }, grid);
        }
    } else if (method == "exact") {
        auto pd = p.cast<double>();
        double qq = to_double(q);
        auto mgf = [&](const Cplx<double>& z) {
            // MGF of S_e(q) on the plus side, of -I_e(q) on the minus side.
            return s == Side::plus ? exact_factor(pd, qq, Side::plus, z, qopts)
                                   : exact_factor(pd, qq, Side::minus, -z, qopts);
        };
        values = laplace_invert_cdf(mgf, grid);
    } else if (method == "mc") {
        if (!(q > 0)) throw DomainError("mc method requires q > 0");
        auto pd = p.cast<double>();
        auto [sup_cdf, inf_cdf] = simulate_extrema_cdf(pd, to_double(q), {step, paths, seed}, grid);
        values = (s == Side::plus) ? sup_cdf : inf_cdf;
    } else {
        throw DomainError("method must be one of me, gc, exact, mc");
    }

    std::printf("x,F\n");
    for (std::size_t i = 0; i < grid.size(); ++i) std::printf("%.17g,%.17g\n", grid[i], values[i]);
    return 0;
}

int run_ruin(const Options& opt, double x, int n) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    auto report = cramer_constant(p, n, {}, tols_of(opt));
    json j = to_json(report, opt.full ? opt.precision : 0);
    if (x >= 0) {
        auto [asym, me] = ruin_probability(p, BigReal(x), n, {}, tols_of(opt));
        j["x"] = x;
        j["asymptotic"] = to_double(asym);
        j["me_value"] = to_double(me);
    }
    emit(j);
    return 0;
}

int run_option(const Options& opt, const std::string& r_text, const std::string& K_text,
               const std::string& A0_text, int n, bool risk_neutral) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    BigReal r = parse_rational(r_text).value<BigReal>();
    if (risk_neutral) p.mu = risk_neutral_mu(p.theta, p.sigma, p.kappa, r);
    auto quote = perpetual_put(p, r, parse_rational(K_text).value<BigReal>(),
                               parse_rational(A0_text).value<BigReal>(), n, {}, tols_of(opt));
    if (to_double(quote.risk_neutral_gap) > 1e-5)
        std::cerr << "warning: psi_X(1) deviates from r by " << to_double(quote.risk_neutral_gap)
                  << "; the quote is not risk neutral\n";
    emit(to_json(quote));
    return 0;
}

int run_check(const Options& opt, int n, int kmax) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt);
    auto rows = cumulant_identity_table(p, q_of(opt), kmax, n, tols_of(opt));
    std::printf("k,psi_deriv,exact,g,e\n");
    for (const auto& row : rows)
        std::printf("%d,%s,%s,%s,%s\n", row.k, fmt(row.psi_deriv, opt).c_str(),
                    fmt(row.exact, opt).c_str(), row.g ? fmt(*row.g, opt).c_str() : "",
                    fmt(row.e, opt).c_str());
    return 0;
}

int run_mc(const Options& opt, const std::string& grid_spec, double step, long long paths,
           std::uint64_t seed) {
    PrecisionGuard guard(opt.precision);
    auto p = params_of(opt).cast<double>();
    double q = to_double(q_of(opt));
    if (!(q > 0)) throw DomainError("mc requires q > 0");
    auto grid = parse_grid(grid_spec);
    auto [sup_cdf, inf_cdf] = simulate_extrema_cdf(p, q, {step, paths, seed}, grid);
    std::printf("x,F_sup,F_neg_inf\n");
    for (std::size_t i = 0; i < grid.size(); ++i)
        std::printf("%.17g,%.17g,%.17g\n", grid[i], sup_cdf[i], inf_cdf[i]);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiener-Hopf factorization of the Normal Inverse Gaussian process"};
    app.require_subcommand(1);
    Options opt;
    opt.precision = default_precision();

    // roots / classify / factors
    auto* roots = app.add_subcommand("roots", "distinguished roots rho, rho_hat, zeta, zeta_hat");
    add_common(roots, opt);
    auto* classify = app.add_subcommand("classify", "case classification (I/II/III x A/B/C)");
    add_common(classify, opt);
    auto* factors = app.add_subcommand("factors", "spectral and Thorin measures of both factors");
    add_common(factors, opt);

    // moments
    std::string side = "plus";
    int kmax = 10;
    auto* moments = app.add_subcommand("moments", "exact negative moments, cumulants, raw moments (CSV)");
    add_common(moments, opt);
    moments->add_option("--side", side, "plus | minus");
    moments->add_option("--kmax", kmax, "highest moment order")->check(CLI::PositiveNumber);

    // pade
    std::string kind = "me";
    int pade_n = 5;
    auto* pade = app.add_subcommand("pade", "gamma-convolution or exponential-mixture parameters");
    add_common(pade, opt);
    pade->add_option("--side", side, "plus | minus");
    pade->add_option("--kind", kind, "gc | me");
    pade->add_option("--n", pade_n, "approximation order")->check(CLI::PositiveNumber);

    // cdf
    std::string method = "me", grid_spec = "0.05:3:0.05";
    double quad_h = 1.0 / 128;
    int quad_digits = 60;
    double mc_step = 1e-3;
    long long mc_paths = 100000;
    std::uint64_t mc_seed = 1;
    auto* cdf = app.add_subcommand("cdf", "CDF of S_e(q) (plus) or -I_e(q) (minus) on a grid (CSV)");
    add_common(cdf, opt);
    cdf->add_option("--side", side, "plus | minus");
    cdf->add_option("--method", method, "me | gc | exact | mc");
    cdf->add_option("--n", pade_n, "approximation order for me/gc");
    cdf->add_option("--grid", grid_spec, "start:stop:step");
    cdf->add_option("--quad-h", quad_h, "tanh-sinh step size");
    cdf->add_option("--quad-digits", quad_digits, "tanh-sinh truncation target");
    cdf->add_option("--step", mc_step, "MC path step");
    cdf->add_option("--paths", mc_paths, "MC path count");
    cdf->add_option("--seed", mc_seed, "MC seed");

    // ruin
    double ruin_x = -1;
    int ruin_n = 15;
    auto* ruin = app.add_subcommand("ruin", "Cramer asymptotics and mixture ruin probability");
    add_common(ruin, opt, /*with_q=*/false);
    ruin->add_option("--x", ruin_x, "initial capital (omit for the report only)");
    ruin->add_option("--n", ruin_n, "mixture order")->check(CLI::PositiveNumber);

    // option
    std::string r_text = "0.01", K_text = "100", A0_text = "100";
    int opt_n = 11;
    bool risk_neutral = false;
    auto* option = app.add_subcommand("option", "perpetual put value and exercise boundary");
    add_common(option, opt, /*with_q=*/false);
    option->add_option("--r", r_text, "interest rate (> 0)");
    option->add_option("--K", K_text, "strike");
    option->add_option("--A0", A0_text, "spot");
    option->add_option("--n", opt_n, "mixture order")->check(CLI::PositiveNumber);
    option->add_flag("--risk-neutral", risk_neutral, "replace mu by the drift solving psi_X(1) = r");

    // check
    int check_n = 5, check_kmax = 9;
    auto* check = app.add_subcommand("check", "cumulant identity table (CSV)");
    add_common(check, opt);
    check->add_option("--n", check_n, "approximation order");
    check->add_option("--kmax", check_kmax, "highest cumulant order (<= 2n-1)");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo empirical CDFs of the extrema (CSV)");
    add_common(mc, opt);
    mc->add_option("--grid", grid_spec, "start:stop:step");
    mc->add_option("--step", mc_step, "path step");
    mc->add_option("--paths", mc_paths, "path count");
    mc->add_option("--seed", mc_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (roots->parsed()) return run_roots(opt);
        if (classify->parsed()) return run_classify(opt);
        if (factors->parsed()) return run_factors(opt);
        if (moments->parsed()) return run_moments(opt, side, kmax);
        if (pade->parsed()) return run_pade(opt, side, kind, pade_n);
        if (cdf->parsed())
            return run_cdf(opt, side, method, pade_n, grid_spec, quad_h, quad_digits, mc_paths, mc_seed,
                           mc_step);
        if (ruin->parsed()) return run_ruin(opt, ruin_x, ruin_n);
        if (option->parsed()) return run_option(opt, r_text, K_text, A0_text, opt_n, risk_neutral);
        if (check->parsed()) return run_check(opt, check_n, check_kmax);
        if (mc->parsed()) return run_mc(opt, grid_spec, mc_step, mc_paths, mc_seed);
    } catch (const DomainError& e) {
        std::cout << json{{"error", e.what()}, {"type", "domain"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}, {"type", "internal"}}.dump() << "\n";
        return 1;
    }
    return 0;
}
