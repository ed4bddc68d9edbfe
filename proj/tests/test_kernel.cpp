#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hz/algebraic.hpp"
#include "hz/errors.hpp"
#include "hz/kernel.hpp"
#include "hz/scan.hpp"

using namespace hz;
using cd = std::complex<double>;

TEST_CASE("mollifier normalization and bump values") {
    const double I = kern::mollifier_normalization();
    CHECK(I == doctest::Approx(0.44399381616808).epsilon(1e-12));

    // trapezoid with all derivatives vanishing at the endpoints
    const long n = 200000;
    double raw = 0.0, mass = 0.0;
    for (long i = 1; i < n; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / n;
        raw += std::exp(-1.0 / (1.0 - x * x));
        mass += kern::mollifier_eval(x);
    }
    CHECK(raw * (2.0 / n) == doctest::Approx(I).epsilon(1e-9));
    CHECK(mass * (2.0 / n) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(kern::mollifier_eval(0.0) == doctest::Approx(std::exp(-1.0) / I).epsilon(1e-14));
    CHECK(kern::mollifier_eval(0.0) < 1.0);
    CHECK(kern::mollifier_eval(1.0) == 0.0);
    CHECK(kern::mollifier_eval(-2.0) == 0.0);
}

TEST_CASE("kernel config ties delta to Q") {
    const auto cfg = kern::KernelConfig::make(4);
    CHECK(cfg.delta == 1.0 / 16.0);
    kern::KernelConfig bad;
    bad.Q = 3;
    bad.delta = 0.1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(kern::KernelConfig::make(1), DomainError);
}

TEST_CASE("fourier coefficients of the scaled mollifier") {
    for (long Q : {2L, 3L, 4L}) {
        const auto cfg = kern::KernelConfig::make(Q);
        CHECK(std::abs(kern::fourier_coeff(0, cfg) - cd(cfg.delta, 0.0)) < 1e-10);
        CHECK(std::abs(kern::fourier_coeff(5, cfg) - std::conj(kern::fourier_coeff(-5, cfg))) <
              1e-13);
    }
    const auto cfg = kern::KernelConfig::make(2);
    for (long n : {1L, 3L, 10L, 40L, 100L}) {
        const double scaled =
            std::abs(kern::fourier_coeff(n, cfg)) * static_cast<double>(n * n) * cfg.delta *
            cfg.delta;
        CHECK(scaled < 0.05);
    }
}

TEST_CASE("product kernel periodicity and support") {
    const auto cfg = kern::KernelConfig::make(2);
    fit::PhaseVector th;
    th.theta = {0.01, 0.98};
    const double v = kern::big_lambda(th, cfg);
    CHECK(v > 0.0);

    fit::PhaseVector shifted;
    shifted.theta = {1.01, -0.02};
    CHECK(kern::big_lambda(shifted, cfg) == doctest::Approx(v).epsilon(1e-12));

    fit::PhaseVector far;
    far.theta = {0.5, 0.01};
    CHECK(kern::big_lambda(far, cfg) == 0.0);

    fit::PhaseVector center;
    center.theta = {0.0, 0.0};
    CHECK(kern::big_lambda(center, cfg) ==
          doctest::Approx(std::pow(kern::mollifier_eval(0.0), 2)).epsilon(1e-14));

    fit::PhaseVector wrong;
    wrong.theta = {0.1};
    CHECK_THROWS_AS(kern::big_lambda(wrong, cfg), DomainError);
}

TEST_CASE("torus curve frequencies") {
    const Alpha a(0.5);
    const auto th = kern::curve_gamma(10.0, a, 3);
    REQUIRE(th.theta.size() == 3);
    for (long n = 0; n < 3; ++n) {
        double want = std::log(n + 0.5) / (2.0 * std::numbers::pi) * 10.0;
        want -= std::floor(want);
        CHECK(th.theta[static_cast<size_t>(n)] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("kernel mass near one for the quadratic parameter") {
    const auto cfg = kern::KernelConfig::make(2);
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    fit::PhaseVector z0;
    z0.theta = {0.0, 0.0};
    const double m = kern::kernel_mass(cfg, a, z0, 2e4);
    CHECK(m == doctest::Approx(0.99980025).epsilon(1e-6));
    CHECK(std::fabs(m - 1.0) < 0.25);

    fit::PhaseVector z1;
    z1.theta = {0.37, 0.81};
    CHECK(std::fabs(kern::kernel_mass(cfg, a, z1, 2e4) - 1.0) < 0.25);

    const double step = cfg.delta * 2.0 * std::numbers::pi / (10.0 * std::log(3.0));
    CHECK(std::fabs(kern::kernel_mass(cfg, a, z0, 2e4, step / 2.0) - m) < 1e-4);
    CHECK_THROWS_AS(kern::kernel_mass(cfg, a, z0, 2e4, step * 4.0), QuadratureError);
    CHECK_THROWS_AS(kern::kernel_mass(cfg, a, z0, -1.0), DomainError);

    if (simd::avx2_available()) {
        const double ms = kern::kernel_mass(cfg, a, z0, 2e4, 0.0, simd::Kind::scalar);
        const double mv = kern::kernel_mass(cfg, a, z0, 2e4, 0.0, simd::Kind::avx2);
        CHECK(std::fabs(ms - mv) < 1e-9);
    }
}

TEST_CASE("golden ratio parameter fails the mass bound") {
    const auto cfg = kern::KernelConfig::make(2);
    const Alpha g = alg::alpha_of(alg::preset_golden());
    fit::PhaseVector z0;
    z0.theta = {0.0, 0.0};
    CHECK(std::fabs(kern::kernel_mass(cfg, g, z0, 2e4) - 1.0) > 0.25);
    fit::PhaseVector z1;
    z1.theta = {0.37, 0.81};
    CHECK(std::fabs(kern::kernel_mass(cfg, g, z1, 2e4) - 1.0) > 0.25);
}

TEST_CASE("integer parameter degenerates the first frequency") {
    const auto cfg = kern::KernelConfig::make(2);
    fit::PhaseVector z0;
    z0.theta = {0.0, 0.0};
    const double m = kern::kernel_mass(cfg, Alpha(1.0), z0, 2e4);
    const double spike = kern::mollifier_eval(0.0) / cfg.delta;
    CHECK(m == doctest::Approx(spike).epsilon(0.01));
}

TEST_CASE("empirical density counts matching windows") {
    const auto cfg = kern::KernelConfig::make(2);
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    fit::TargetSpec spec;
    spec.sigma = 1.0;
    spec.N = 1;
    spec.epsilon = 0.25;
    spec.A_floor = a.approx();
    for (int k = 0; k <= 1; ++k) spec.a.push_back(scan::em_point(1.0, 150.0, a, k));

    const double d1 = kern::empirical_density(cfg, a, 1.0, spec, 100.0, 2001);
    CHECK(d1 > 0.0);

    fit::TargetSpec wide = spec;
    wide.epsilon = 0.5;
    CHECK(kern::empirical_density(cfg, a, 1.0, wide, 100.0, 2001) >= d1);

    fit::TargetSpec all = spec;
    all.epsilon = 1e3;
    CHECK(kern::empirical_density(cfg, a, 1.0, all, 100.0, 2001) == 1.0);

    CHECK_THROWS_AS(kern::empirical_density(cfg, a, 1.0, spec, 100.0, 500), DomainError);
}
