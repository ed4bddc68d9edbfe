#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hz/algebraic.hpp"
#include "hz/errors.hpp"
#include "hz/scan.hpp"
#include "hz/search.hpp"
#include "hz/zeta_core.hpp"

using namespace hz;
using cd = std::complex<double>;

TEST_CASE("contour coefficients for entire functions") {
    search::ApproxJob job;
    job.s0 = {1.0, 0.0};
    job.r = 1.0;
    job.f = [](cd s) { return s * s; };
    auto c = search::taylor_coeffs(job, 6);
    REQUIRE(c.size() == 7);
    CHECK(std::abs(c[0] - cd(1.0, 0)) < 1e-14);
    CHECK(std::abs(c[1] - cd(2.0, 0)) < 1e-14);
    CHECK(std::abs(c[2] - cd(1.0, 0)) < 1e-14);
    for (int k = 3; k <= 6; ++k) CHECK(std::abs(c[static_cast<size_t>(k)]) < 1e-14);

    job.f = [](cd s) { return std::exp(s); };
    c = search::taylor_coeffs(job, 6);
    double fact = 1.0;
    for (int k = 0; k <= 6; ++k) {
        CHECK(std::abs(c[static_cast<size_t>(k)] - cd(std::exp(1.0) / fact, 0)) < 1e-12);
        fact *= static_cast<double>(k + 1);
    }

    job.f = [](cd s) { return 1.0 / (2.0 - s); };
    job.r = 0.5;
    c = search::taylor_coeffs(job, 6);
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(c[static_cast<size_t>(k)] - cd(1.0, 0)) < 1e-10);
}

TEST_CASE("contour quadrature detects unresolved poles") {
    search::ApproxJob job;
    job.s0 = {1.0, 0.0};
    job.r = 0.1;
    job.f = [](cd s) { return 1.0 / (1.0 + 1e-6 - s); };
    CHECK_THROWS_AS(search::taylor_coeffs(job, 8), QuadratureError);
}

TEST_CASE("delta equation residual") {
    const double d = search::choose_delta(1.0, 5, 1.0, 0.1);
    CHECK(d == doctest::Approx(0.465242).epsilon(1e-5));

    auto resid = [](double M, int N, double r, double eps, double delta) {
        return M * std::pow(delta, N) / (1.0 - delta) - eps * (2.0 - std::exp(delta * r));
    };
    CHECK(std::fabs(resid(1.0, 5, 1.0, 0.1, d)) < 1e-10);

    for (double M : {0.5, 2.0, 10.0})
        for (int N : {1, 3, 7}) {
            const double dd = search::choose_delta(M, N, 0.25, 0.05);
            CHECK(dd > 0.0);
            CHECK(dd < 1.0);
            CHECK(std::fabs(resid(M, N, 0.25, 0.05, dd)) < 1e-10);
        }

    CHECK_THROWS_AS(search::choose_delta(0.0, 3, 1.0, 0.1), BracketError);
    CHECK_THROWS_AS(search::choose_delta(1.0, 0, 1.0, 0.1), BracketError);
    CHECK_THROWS_AS(search::choose_delta(-1.0, 3, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(search::choose_delta(1.0, 3, 1.0, -0.1), DomainError);
}

TEST_CASE("window validation") {
    search::SearchWindow win;
    CHECK_NOTHROW(win.validate());
    win.T = 0.0;
    CHECK_THROWS_AS(win.validate(), DomainError);
    win.T = 100.0;
    win.grid_points = 1;
    CHECK_THROWS_AS(win.validate(), DomainError);
    win.grid_points = 100;
    win.refine_iters = -1;
    CHECK_THROWS_AS(win.validate(), DomainError);
}

TEST_CASE("grid search recovers a planted target") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;
    win.T = 100.0;
    win.grid_points = 100001;
    win.refine_iters = 40;
    const double tau_star = 133.777;

    fit::TargetSpec spec;
    spec.sigma = 1.0;
    spec.N = 1;
    spec.epsilon = 0.05;
    spec.A_floor = a.approx();
    for (int k = 0; k <= 1; ++k) spec.a.push_back(scan::em_point(1.0, tau_star, a, k));

    const auto rep = search::search_shift(spec, a, win);
    CHECK(rep.satisfied);
    CHECK(rep.max_error < 1e-4);
    CHECK(rep.tau_best == doctest::Approx(tau_star).epsilon(1e-6));
    CHECK(rep.em_points == 100001);
    CHECK(rep.afe_points == 0);
    REQUIRE(rep.errors_per_k.size() == 2);
    for (double e : rep.errors_per_k) CHECK(e <= rep.max_error + 1e-15);
}

TEST_CASE("refinement never loses to the coarse scan") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;
    win.T = 200.0;
    win.grid_points = 20001;
    win.refine_iters = 50;

    fit::TargetSpec spec;
    spec.sigma = 1.0;
    spec.N = 1;
    spec.epsilon = 0.01;
    spec.A_floor = a.approx();
    spec.a = {{1.1, -0.3}, {0.2, 0.1}};

    const auto rep = search::search_shift(spec, a, win);

    double best = 1e300;
    const double h = 200.0 / 20000.0;
    for (long j = 0; j < 20001; ++j) {
        const double tau = 200.0 + static_cast<double>(j) * h;
        double err = 0.0;
        for (int k = 0; k <= 1; ++k)
            err = std::max(err,
                           std::abs(scan::em_point(1.0, tau, a, k) - spec.a[static_cast<size_t>(k)]));
        best = std::min(best, err);
    }
    CHECK(rep.max_error <= best + 1e-12);
}

TEST_CASE("scan splits at the evaluator crossover") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;
    win.T = 9000.0;
    win.grid_points = 20001;
    win.refine_iters = 8;

    fit::TargetSpec spec;
    spec.sigma = 1.0;
    spec.N = 0;
    spec.epsilon = 0.5;
    spec.A_floor = a.approx();
    spec.a = {{1.0, 0.0}};

    const auto rep = search::search_shift(spec, a, win);
    CHECK(rep.em_points + rep.afe_points == 20001);
    const double h = 9000.0 / 20000.0;
    const long em_expected = static_cast<long>(std::floor((1e4 - 9000.0) / h)) + 1;
    CHECK(rep.em_points == em_expected);
    CHECK(rep.afe_points == 20001 - em_expected);
}

TEST_CASE("approximation pipeline on a shifted zeta slice") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;
    win.T = 1000.0;
    win.grid_points = 20001;
    win.refine_iters = 60;
    const double tau_star = 1777.25;  // on the h = 0.05 grid

    search::ApproxJob job;
    job.s0 = {1.0, 0.0};
    job.r = 0.25;
    job.epsilon = 0.05;
    job.delta0 = 0.5;
    job.N = 10;
    job.f = [&](cd s) {
        return zeta::hurwitz_zeta({s.real(), s.imag() + tau_star}, a).value;
    };

    const auto rep = search::approx_function(job, a, win);
    CHECK(rep.search.satisfied);
    CHECK(rep.tau == doctest::Approx(tau_star).epsilon(1e-8));
    CHECK(rep.max_error_on_disk < 3.0 * 0.05);
    CHECK(rep.bound_3eps_ok);
    CHECK(rep.n_used >= 1);
    CHECK(rep.delta > 0.0);
    CHECK(rep.delta < 1.0);

    const double resid = rep.m_tau * std::pow(rep.delta, rep.n_used) / (1.0 - rep.delta) -
                         0.05 * (2.0 - std::exp(rep.delta * job.r));
    CHECK(std::fabs(resid) < 1e-10);
    CHECK(rep.sigma2_value <= rep.sigma2_bound);
    CHECK(rep.sigma3_value > 0.0);
    REQUIRE(rep.coeffs.size() == static_cast<size_t>(rep.n_used) + 1);
}

TEST_CASE("constant targets stay within the disk bound") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;
    win.T = 1000.0;
    win.grid_points = 50001;
    win.refine_iters = 60;

    search::ApproxJob job;
    job.s0 = {1.0, 0.0};
    job.r = 0.25;
    job.epsilon = 0.05;
    job.delta0 = 0.5;
    job.N = 10;
    const cd c(3.52, 0.96);
    job.f = [c](cd) { return c; };

    const auto rep = search::approx_function(job, a, win);
    CHECK(rep.n_used == 1);
    CHECK(rep.max_error_on_disk < 3.0 * 0.05);
    CHECK(rep.bound_3eps_ok);
}

TEST_CASE("approximation job guards") {
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    search::SearchWindow win;

    search::ApproxJob job;
    job.s0 = {1.0, 0.0};
    job.r = 0.25;
    job.epsilon = 0.05;
    job.delta0 = 0.5;
    job.N = 10;
    job.f = [](cd) { return cd(1.0, 0.0); };

    auto bad = job;
    bad.f = nullptr;
    CHECK_THROWS_AS(search::approx_function(bad, a, win), DomainError);
    bad = job;
    bad.f = [](cd) { return cd{}; };
    CHECK_THROWS_AS(search::approx_function(bad, a, win), DomainError);
    bad = job;
    bad.f = [](cd) { return cd(1.0, 0.0); };
    bad.N = 0;
    CHECK_THROWS_AS(search::approx_function(bad, a, win), DomainError);
    bad = job;
    bad.f = [](cd) { return cd(1.0, 0.0); };
    bad.s0 = {1.0, 2.0};
    CHECK_THROWS_AS(search::approx_function(bad, a, win), DomainError);
    bad = job;
    bad.f = [](cd) { return cd(1.0, 0.0); };
    bad.delta0 = 1.0;
    CHECK_THROWS_AS(search::approx_function(bad, a, win), DomainError);

    search::SearchWindow tiny;
    tiny.T = 0.1;
    CHECK_THROWS_AS(search::approx_function(job, a, tiny), DomainError);
}
