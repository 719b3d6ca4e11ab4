#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace nigwh;
using namespace nigwh::testing;
using Catch::Approx;

namespace {

ExponentialMixture<double> single_exp(double lambda) {
    ExponentialMixture<double> e;
    e.components.push_back({1.0, lambda});
    return e;
}

}  // namespace

TEST_CASE("mgf evaluation") {
    SECTION("normalization at z = 0") {
        GammaConvolution<double> g;
        g.components = {{0.5, 2.0}, {1.3, 0.7}};
        CHECK(real_part(gc_mgf(g, Cplx<double>(0.0))) == Approx(1.0));
        auto e = single_exp(0.9);
        CHECK(real_part(me_mgf(e, Cplx<double>(0.0))) == Approx(1.0));
    }

    SECTION("single Gamma(1/2, rho) at z = -1") {
        double rho = 2.030776;
        GammaConvolution<double> g;
        g.components = {{0.5, rho}};
        CHECK(real_part(gc_mgf(g, Cplx<double>(-1.0))) ==
              Approx(std::pow(1 + 1 / rho, -0.5)).epsilon(1e-14));
    }

    SECTION("me_mgf derivative at zero equals the mean") {
        ExponentialMixture<double> e;
        e.components = {{0.3, 1.5}, {0.7, 4.0}};
        double h = 1e-6;
        double fd = (real_part(me_mgf(e, Cplx<double>(h))) - real_part(me_mgf(e, Cplx<double>(-h)))) / (2 * h);
        CHECK(fd == Approx(me_mean(e)).epsilon(1e-8));
    }

    SECTION("domain guards") {
        GammaConvolution<double> g;
        g.components = {{0.5, 2.0}};
        CHECK_THROWS_AS(gc_mgf(g, Cplx<double>(2.5)), DomainError);
        auto e = single_exp(1.0);
        CHECK_THROWS_AS(me_mgf(e, Cplx<double>(1.0)), PoleError);
    }
}

TEST_CASE("mixture cdf and density") {
    auto e = single_exp(1.0);

    SECTION("boundary values") {
        CHECK(me_cdf(e, 0.0) == 0.0);
        CHECK(me_cdf(e, 60.0) == Approx(1.0).epsilon(1e-12));
        CHECK(me_cdf(e, std::log(2.0)) == Approx(0.5).epsilon(1e-14));
        CHECK_THROWS_AS(me_cdf(e, -0.1), DomainError);
    }

    SECTION("Exp(2) density at 0+ is 2 and integrates to one") {
        auto e2 = single_exp(2.0);
        CHECK(me_density(e2, 1e-12) == Approx(2.0).epsilon(1e-9));
        double mass = integrate_interval<double>([&](double x) { return me_density(e2, x); }, 0.0, 40.0,
                                                 {1.0 / 128, 30});
        CHECK(mass == Approx(1.0).epsilon(1e-12));
    }

    SECTION("density is the cdf derivative") {
        ExponentialMixture<double> mix;
        mix.components = {{0.4, 0.8}, {0.6, 2.5}};
        double h = 1e-6;
        double fd = (me_cdf(mix, 1.0 + h) - me_cdf(mix, 1.0 - h)) / (2 * h);
        CHECK(fd == Approx(me_density(mix, 1.0)).epsilon(1e-8));
    }

    SECTION("cdf nondecreasing, density positive") {
        ExponentialMixture<double> mix;
        mix.components = {{0.2, 0.3}, {0.5, 1.1}, {0.3, 6.0}};
        double prev = 0;
        for (double x = 0; x <= 10; x += 0.25) {
            double v = me_cdf(mix, x);
            CHECK(v >= prev);
            prev = v;
            if (x > 0) CHECK(me_density(mix, x) > 0);
        }
    }
}

TEST_CASE("tanh-sinh quadrature") {
    QuadratureOptions opts{1.0 / 128, 60};

    SECTION("int_{-1}^{1} dx = 2") {
        double v = tanh_sinh<double>([](double) { return 1.0; }, opts);
        CHECK(v == Approx(2.0).epsilon(1e-14));
    }

    SECTION("endpoint singularity: int 1/sqrt(1-x^2) = pi") {
        // 1 - x^2 = d (2 - d) with d the exact endpoint distance.
        double v = tanh_sinh<double>([](double, double d) { return 1.0 / std::sqrt(d * (2 - d)); }, opts);
        CHECK(v == Approx(pi_value<double>()).epsilon(1e-12));
    }

    SECTION("the arctan identity integrand, transformed to (-1,1)") {
        double C = -0.030776, R = 2.030776;
        double closed = stieltjes_power_integral(1, C, R);
        double quad = integrate_half_line_edge<double>(
            [&](double u, double umR) { return 1.0 / (u * std::sqrt(umR * (u - C))); }, R, opts);
        CHECK(quad == Approx(closed).epsilon(1e-12));
    }

    SECTION("non-finite interior values raise") {
        CHECK_THROWS_AS(tanh_sinh<double>([](double x) { return 1.0 / x; }, opts), NonFiniteError);
    }
}

TEST_CASE("exact Wiener-Hopf factor") {
    SECTION("normalization at z = 0") {
        auto p = signed_case_params<double>();
        double q = to_double(signed_case_q<double>());
        CHECK(real_part(exact_factor(p, q, Side::plus, Cplx<double>(0.0))) == Approx(1.0).epsilon(1e-12));
        CHECK(real_part(exact_factor(p, q, Side::minus, Cplx<double>(0.0))) == Approx(1.0).epsilon(1e-12));
    }

    SECTION("III-C plus factor is (1 - z/rho)^{-1/2}") {
        NigParams<double> p{0.8, 0.9, 4.0, 0.0};
        double q = 0.25, rho = characteristic_roots(p).first;
        for (double z : {-1.0, -0.5}) {
            double expect = std::pow(1 - z / rho, -0.5);
            CHECK(real_part(exact_factor(p, q, Side::plus, Cplx<double>(z))) == Approx(expect).epsilon(1e-13));
        }
    }

    SECTION("factorization identity at z = 0.1i") {
        auto p = ggc_case_params<double>();
        double q = 1.0;
        Cplx<double> z{0.0, 0.1};
        auto lhs = exact_factor(p, q, Side::plus, z) * exact_factor(p, q, Side::minus, z) *
                   (Cplx<double>(q) - laplace_exponent(p, z)) / Cplx<double>(q);
        CHECK(abs(lhs - Cplx<double>(1.0)) < 1e-8);
    }

    SECTION("support-ray evaluation raises BranchError") {
        auto p = signed_case_params<double>();
        double q = to_double(signed_case_q<double>());
        double R = radius_of_convergence(p, q, Side::plus);
        CHECK_THROWS_AS(exact_factor(p, q, Side::plus, Cplx<double>(R + 0.1)), BranchError);
    }

    SECTION("factorization identity on the imaginary axis, both parameter sets") {
        for (auto [p, q] : {std::pair{signed_case_params<double>(), to_double(signed_case_q<double>())},
                            std::pair{ggc_case_params<double>(), 1.0}}) {
            for (int i = 1; i <= 20; ++i) {
                Cplx<double> z{0.0, i * 0.5};
                auto lhs = exact_factor(p, q, Side::plus, z) * exact_factor(p, q, Side::minus, z) *
                           (Cplx<double>(q) - laplace_exponent(p, z)) / Cplx<double>(q);
                CHECK(abs(lhs - Cplx<double>(1.0)) < 1e-8);
            }
        }
    }

    SECTION("halving h moves the factor by less than 1e-10 relative") {
        auto p = signed_case_params<double>();
        double q = to_double(signed_case_q<double>());
        double coarse = real_part(exact_factor(p, q, Side::plus, Cplx<double>(-1.0), {1.0 / 128, 60}));
        double fine = real_part(exact_factor(p, q, Side::plus, Cplx<double>(-1.0), {1.0 / 256, 60}));
        CHECK(std::fabs(coarse - fine) < 1e-10 * std::fabs(fine));
    }
}

TEST_CASE("laplace inversion") {
    SECTION("Exp(1) cdf recovered to 1e-8 on a 50-point grid") {
        auto mgf = [](const Cplx<double>& z) { return Cplx<double>(1.0) / (Cplx<double>(1.0) - z); };
        std::vector<double> grid;
        for (int i = 1; i <= 50; ++i) grid.push_back(0.08 * i);
        auto vals = laplace_invert_cdf(mgf, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(close_abs(vals[i], 1 - std::exp(-grid[i]), 1e-8));
    }

    SECTION("Gamma(1/2, 1) cdf matches erf(sqrt(x))") {
        GammaConvolution<double> g;
        g.components = {{0.5, 1.0}};
        auto mgf = [&](const Cplx<double>& z) { return gc_mgf(g, z); };
        for (double x : {0.5, 1.0, 2.0}) {
            double val = laplace_invert_cdf(mgf, {x})[0];
            CHECK(close_abs(val, std::erf(std::sqrt(x)), 1e-8));
        }
    }

    SECTION("round trip through random exponential mixtures, 1e-7 on 50 points") {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> wdist(0.1, 1.0), rate(0.2, 8.0);
        for (int trial = 0; trial < 6; ++trial) {
            ExponentialMixture<double> mix;
            int n = 1 + trial;
            double total = 0;
            for (int i = 0; i < n; ++i) {
                mix.components.push_back({wdist(rng), rate(rng)});
                total += mix.components.back().omega;
            }
            for (auto& comp : mix.components) comp.omega /= total;
            auto mgf = [&](const Cplx<double>& z) { return me_mgf(mix, z); };
            std::vector<double> grid;
            for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);
            auto vals = laplace_invert_cdf(mgf, grid);
            for (std::size_t i = 0; i < grid.size(); ++i)
                CHECK(close_abs(vals[i], me_cdf(mix, grid[i]), 1e-7));
        }
    }

    SECTION("GC(5) inversion agrees with the companion ME(5) cdf within 5e-3") {
        PrecisionGuard guard(500);
        auto p = ggc_case_params<BigReal>();
        BigReal q(1);
        auto tau = thorin_measure(p, q, Side::plus);
        auto mom = moment_sequence(tau, 10);
        BigReal R = radius_of_convergence(p, q, Side::plus);
        auto gc = gamma_convolution_from_cgf(mom, 5, R).to_double();
        auto me = exp_mixture_from_mgf(mom, 5, R).to_double();
        auto mgf = [&](const Cplx<double>& z) { return gc_mgf(gc, z); };
        for (double x = 0.05; x <= 3.0; x += 0.12) {
            double via_inversion = laplace_invert_cdf(mgf, {x})[0];
            CHECK(close_abs(via_inversion, me_cdf(me, x), 5e-3));
        }
    }

    SECTION("x <= 0 returns 0, invalid inversions raise") {
        auto mgf = [](const Cplx<double>& z) { return Cplx<double>(1.0) / (Cplx<double>(1.0) - z); };
        CHECK(laplace_invert_cdf(mgf, {0.0})[0] == 0.0);
        // An MGF that is not a distribution's (F would exceed 1) must be caught.
        auto bogus = [](const Cplx<double>& z) { return Cplx<double>(3.0) / (Cplx<double>(1.0) - z); };
        CHECK_THROWS_AS(laplace_invert_cdf(bogus, {2.0}), ConvergenceError);
    }
}
