#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace nigwh;
using namespace nigwh::testing;
using Catch::Approx;

namespace {

// Independent oracle for the power integrals: tanh-sinh over (R, inf).
double quad_power_integral(int k, double C, double R) {
    QuadratureOptions opts{1.0 / 128, 30};
    return integrate_half_line_edge<double>(
        [&](double x, double xmR) { return std::pow(x, -k) / std::sqrt(xmR * (x - C)); }, R, opts);
}

}  // namespace

TEST_CASE("stieltjes power integral") {
    SECTION("k=1 closed form (the arctan identity)") {
        double C = -0.030776, R = 2.030776;
        double expect = (std::atan(-(C + R) / (2 * std::sqrt(-C * R))) + pi_value<double>() / 2) /
                        std::sqrt(-C * R);
        CHECK(stieltjes_power_integral(1, C, R) == Approx(expect).epsilon(1e-15));
    }

    SECTION("symmetric roots give pi/2") {
        CHECK(stieltjes_power_integral(1, -1.0, 1.0) == Approx(pi_value<double>() / 2).epsilon(1e-15));
    }

    SECTION("k=3 against quadrature") {
        CHECK(stieltjes_power_integral(3, -2.0, 1.0) ==
              Approx(quad_power_integral(3, -2.0, 1.0)).epsilon(1e-12));
    }

    SECTION("recursion stays accurate to k=15 against quadrature") {
        for (int k : {2, 5, 9, 15}) {
            CHECK(stieltjes_power_integral(k, -0.8, 0.37) ==
                  Approx(quad_power_integral(k, -0.8, 0.37)).epsilon(1e-11));
        }
    }

    SECTION("domain errors") {
        CHECK_THROWS_AS(stieltjes_power_integral(1, 0.5, 1.0), DomainError);
        CHECK_THROWS_AS(stieltjes_power_integral(1, -1.0, -0.5), DomainError);
        CHECK_THROWS_AS(stieltjes_power_integral(0, -1.0, 1.0), DomainError);
    }
}

TEST_CASE("pole integral, real pole") {
    SECTION("J = 0 reduces to the k=1 power integral") {
        CHECK(pole_integral_real(0.0, -1.3, 0.8) ==
              Approx(stieltjes_power_integral(1, -1.3, 0.8)).epsilon(1e-15));
    }

    SECTION("boundary-singular pole rejected") {
        CHECK_THROWS_AS(pole_integral_real(-1.0, -1.0, 1.0), DomainError);
        CHECK_THROWS_AS(pole_integral_real(1.5, -1.0, 1.0), DomainError);
    }

    SECTION("against quadrature") {
        double J = -0.5, C = -1.0, R = 1.0;
        QuadratureOptions opts{1.0 / 128, 30};
        double oracle = integrate_half_line_edge<double>(
            [&](double x, double xmR) { return 1.0 / ((x - J) * std::sqrt(xmR * (x - C))); }, R, opts);
        CHECK(pole_integral_real(J, C, R) == Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("pole integral, complex pole") {
    double C = -1.0, R = 1.0;
    Cplx<double> D{0.3, 0.4};

    SECTION("Schwarz reflection") {
        auto v = pole_integral_complex(D, C, R);
        auto vbar = pole_integral_complex(conj(D), C, R);
        CHECK(real_part(vbar) == Approx(real_part(v)).epsilon(1e-14));
        CHECK(imag_part(vbar) == Approx(-imag_part(v)).epsilon(1e-14));
    }

    SECTION("conjugate pair combination is real") {
        Cplx<double> wD{0.7, -1.1};
        auto pair = pole_integral_complex(D, C, R) * wD + pole_integral_complex(conj(D), C, R) * conj(wD);
        CHECK(std::fabs(imag_part(pair)) < 1e-14 * std::max(1.0, std::fabs(real_part(pair))));
    }

    SECTION("against quadrature") {
        QuadratureOptions opts{1.0 / 128, 30};
        auto oracle = integrate_half_line_edge<double>(
            [&](double x, double xmR) {
                return Cplx<double>(1.0) / ((Cplx<double>(x) - D) * std::sqrt(xmR * (x - C)));
            },
            R, opts);
        auto closed = pole_integral_complex(D, C, R);
        CHECK(real_part(closed) == Approx(real_part(oracle)).epsilon(1e-12));
        CHECK(imag_part(closed) == Approx(imag_part(oracle)).epsilon(1e-12));
    }

    SECTION("real pole rejected") {
        CHECK_THROWS_AS(pole_integral_complex(Cplx<double>(0.3), C, R), DomainError);
    }
}

TEST_CASE("partial fraction coefficients") {
    // The small-|DE| recursion amplifies roundoff like |DE|^{-k}, which is why
    // the engine runs it at extended precision; the identity check does too.
    PrecisionGuard guard(60);
    using C = Cplx<BigReal>;
    auto identity_residual = [](const C& A, const C& B, const C& D, const C& E, int k) {
        auto pf = partial_fraction_coeffs(A, B, D, E, k);
        double worst = 0;
        for (double x : {2.0, 3.0, 5.0, 7.0, 11.0}) {
            C xx{BigReal(x)};
            C lhs = (A * xx + B);
            C denom{BigReal(1)};
            for (int i = 0; i < k; ++i) denom *= xx;
            lhs /= denom * (xx - D) * (xx - E);
            C rhs{BigReal(0)};
            C xpow{BigReal(1)};
            for (int j = 1; j <= k; ++j) {
                xpow *= xx;
                rhs += pf.a1[k - j] / xpow;
            }
            rhs += (pf.a21 * xx + pf.a20) / ((xx - D) * (xx - E));
            worst = std::max(worst, to_double(abs(lhs - rhs) / abs(lhs)));
        }
        return worst;
    };
    auto cc = [](double re, double im) { return C{BigReal(re), BigReal(im)}; };

    SECTION("k=1 base case") {
        C A = cc(0.7, 0), B = cc(-1.3, 0), D = cc(0.5, 0), E = cc(-2.0, 0);
        auto pf = partial_fraction_coeffs(A, B, D, E, 1);
        CHECK(to_double(real_part(pf.a1[0])) == Approx(to_double(real_part(B / (D * E)))));
        CHECK(to_double(real_part(pf.a21)) == Approx(-to_double(real_part(pf.a1[0]))));
        CHECK(identity_residual(A, B, D, E, 1) < 1e-40);
    }

    SECTION("polynomial identity at random points, k up to 8") {
        CHECK(identity_residual(cc(1.0, 0), cc(2.0, 0), cc(0.4, 0), cc(-1.7, 0), 5) < 1e-40);
        CHECK(identity_residual(cc(-0.3, 0), cc(0.9, 0), cc(0.15, 0.3), cc(0.15, -0.3), 8) < 1e-35);
    }

    SECTION("repeated real pole") {
        CHECK(identity_residual(cc(1.1, 0), cc(0.4, 0), cc(0.6, 0), cc(0.6, 0), 4) < 1e-40);
    }

    SECTION("rejections") {
        C one = cc(1, 0), zero = cc(0, 0);
        CHECK_THROWS_AS(partial_fraction_coeffs(zero, zero, one, one, 3), DomainError);
        CHECK_THROWS_AS(partial_fraction_coeffs(one, one, zero, one, 3), DomainError);
    }
}

TEST_CASE("negative moments") {
    SECTION("III-C: atom only, m_k = rho^{-k}/2") {
        NigParams<double> p{0.8, 0.9, 4.0, 0.0};
        auto tau = thorin_measure(p, 0.25, Side::plus);
        double rho = characteristic_roots(p).first;
        for (int k : {1, 2, 7}) CHECK(negative_moment(tau, k) == Approx(std::pow(rho, -k) / 2).epsilon(1e-14));
    }

    SECTION("killed-mean identity: m_1(plus) - m_1(minus) = (theta+mu)/q = -5") {
        PrecisionGuard guard(80);
        auto p = ggc_case_params<BigReal>();
        BigReal q(1);
        auto mp = negative_moment(thorin_measure(p, q, Side::plus), 1);
        auto mm = negative_moment(thorin_measure(p, q, Side::minus), 1);
        CHECK(to_double(mp - mm) == Approx(-5.0).epsilon(1e-14));
    }

    SECTION("closed form vs quadrature oracle for a mu-family measure") {
        PrecisionGuard guard(60);
        auto p = signed_case_params<BigReal>();
        auto tau = thorin_measure(p, signed_case_q<BigReal>(), Side::plus);
        auto mom = negative_moments(tau, 10);
        for (int k = 1; k <= 10; ++k) {
            BigReal oracle = quadrature_moment_oracle(tau, k, {1.0 / 128, 45});
            CHECK(close_rel(mom[k - 1], oracle, 1e-12));
        }
    }

    SECTION("natural (unmirrored) minus measure is rejected") {
        auto p = ggc_case_params<double>();
        auto omega = omega_measure(p, 1.0, Side::minus);
        CHECK_THROWS_AS(negative_moment(omega, 1), DomainError);
    }
}

TEST_CASE("cumulants_to_moments") {
    SECTION("mu_1 = m_1 and kappa_k = (k-1)! m_k") {
        MomentSequence<double> seq;
        seq.m = {0.7, 0.31, 0.11, 0.05};
        seq = cumulants_to_moments(std::move(seq));
        CHECK(seq.mu_raw[0] == 1.0);
        CHECK(seq.mu_raw[1] == 0.7);
        CHECK(seq.kappa_cum[3] == Approx(6 * 0.05));
    }

    SECTION("all m_k = 0 degenerates at zero") {
        MomentSequence<double> seq;
        seq.m = {0.0, 0.0, 0.0};
        seq = cumulants_to_moments(std::move(seq));
        for (int k = 1; k <= 3; ++k) CHECK(seq.mu_raw[k] == 0.0);
    }

    SECTION("single gamma(alpha, beta): m_k = alpha/beta^k reproduces the gamma moments") {
        double alpha = 0.5, beta = 2.0;
        MomentSequence<double> seq;
        for (int k = 1; k <= 4; ++k) seq.m.push_back(alpha * std::pow(beta, -k));
        seq = cumulants_to_moments(std::move(seq));
        CHECK(seq.mu_raw[1] == Approx(alpha / beta));
        CHECK(seq.mu_raw[2] == Approx(alpha * (alpha + 1) / (beta * beta)));
        CHECK(seq.mu_raw[3] == Approx(alpha * (alpha + 1) * (alpha + 2) / std::pow(beta, 3)));
    }
}

namespace {

struct CaseDraw {
    NigParams<double> p;
    double q;
};

// Rejection-samples parameter sets landing in the requested classification.
std::vector<CaseDraw> draw_cases(PlusCase plus, MinusCase minus, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-2.5, 2.5), pos(0.3, 3.0), qd(0.05, 3.0);
    std::vector<CaseDraw> out;
    for (int tries = 0; tries < 40000 && static_cast<int>(out.size()) < count; ++tries) {
        NigParams<double> p{unif(rng), pos(rng), pos(rng), unif(rng)};
        double q = qd(rng);
        auto cl = classify_case(p, q);
        if (cl.plus_case == plus && cl.minus_case == minus) out.push_back({p, q});
    }
    return out;
}

}  // namespace

TEST_CASE("closed form vs oracle across cases, k <= 15 (50 random sets)") {
    PrecisionGuard guard(120);
    QuadratureOptions oracle_opts{1.0 / 128, 45};
    int total = 0;

    auto check_set = [&](const NigParams<double>& pd, double qd) {
        NigParams<BigReal> p{BigReal(pd.theta), BigReal(pd.sigma), BigReal(pd.kappa), BigReal(pd.mu)};
        BigReal q(qd);
        for (Side side : {Side::plus, Side::minus}) {
            auto tau = thorin_measure(p, q, side);
            auto mom = negative_moments(tau, 15);
            for (int k : {1, 2, 3, 5, 8, 11, 15}) {
                BigReal oracle = quadrature_moment_oracle(tau, k, oracle_opts);
                REQUIRE(close_rel(mom[k - 1], oracle, 1e-10));
            }
        }
        ++total;
    };

    for (auto& d : draw_cases(PlusCase::I, MinusCase::A, 14, 101)) check_set(d.p, d.q);
    for (auto& d : draw_cases(PlusCase::II, MinusCase::A, 14, 102)) check_set(d.p, d.q);
    for (auto& d : draw_cases(PlusCase::II, MinusCase::B, 14, 103)) check_set(d.p, d.q);
    {  // III-C: exact construction, mu = 0 and q = 1/kappa
        std::mt19937 rng(104);
        std::uniform_real_distribution<double> unif(-2, 2), pos(0.3, 3.0);
        for (int i = 0; i < 8; ++i) {
            NigParams<double> p{unif(rng), pos(rng), pos(rng), 0.0};
            check_set(p, 1 / p.kappa);
        }
    }
    CHECK(total >= 50);
}

TEST_CASE("hankel positivity of GGC moment sequences") {
    PrecisionGuard guard(80);
    auto p = ggc_case_params<BigReal>();
    for (Side side : {Side::plus, Side::minus}) {
        auto tau = thorin_measure(p, BigReal(1), side);
        REQUIRE(is_ggc(tau));
        auto mom = negative_moments(tau, 8);
        // [m_{i+j+1}] for i,j <= 3 must be positive semidefinite: leading
        // principal minors are positive for moments of a positive measure.
        double h[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) h[i][j] = to_double(mom[i + j]);
        // Cholesky without pivoting succeeds iff positive definite.
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = h[i][j];
                for (int k = 0; k < j; ++k) s -= h[i][k] * h[j][k];
                if (i == j) {
                    if (s <= 0) { ok = false; break; }
                    h[i][i] = std::sqrt(s);
                } else {
                    h[i][j] = s / h[j][j];
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("cumulant identity against the validation oracle, k <= 9") {
    PrecisionGuard guard(120);
    auto p = ggc_case_params<BigReal>();
    BigReal q(1);
    auto mom_plus = moment_sequence(thorin_measure(p, q, Side::plus), 9);
    auto mom_minus = moment_sequence(thorin_measure(p, q, Side::minus), 9);
    auto psi = xeq_cumulants(p, q, 9);
    for (int k = 1; k <= 9; ++k) {
        BigReal sign = (k % 2 == 0) ? 1 : -1;
        BigReal exact = mom_plus.kappa_cum[k - 1] + sign * mom_minus.kappa_cum[k - 1];
        CHECK(close_rel(exact, psi[k], 1e-12));
    }
}

TEST_CASE("determinism: identical inputs give bit-identical moments") {
    PrecisionGuard guard(100);
    auto p = signed_case_params<BigReal>();
    auto tau = thorin_measure(p, signed_case_q<BigReal>(), Side::plus);
    auto a = negative_moments(tau, 12);
    auto b = negative_moments(tau, 12);
    for (int k = 0; k < 12; ++k) CHECK(a[k] == b[k]);
}
