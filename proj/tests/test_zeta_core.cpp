#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hz/errors.hpp"
#include "hz/types.hpp"
#include "hz/zeta_core.hpp"
#include "oracles.hpp"

using namespace hz;
using cd = std::complex<double>;

namespace {

cd hz_val(double sigma, double t, double a, int k = 0) {
    return zeta::hurwitz_zeta({sigma, t}, Alpha(a), k).value;
}

}  // namespace

TEST_CASE("values at classical points") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(hz_val(2, 0, 1.0) - cd(pi * pi / 6.0, 0)) < 1e-13);
    CHECK(std::abs(hz_val(4, 0, 1.0) - cd(pi * pi * pi * pi / 90.0, 0)) < 1e-13);
    CHECK(std::abs(hz_val(2, 0, 0.5) - cd(pi * pi / 2.0, 0)) < 1e-13);
    CHECK(std::abs(hz_val(3, 0, 0.37) - oracle::hurwitz_direct(cd(3, 0), 0.37)) < 1e-9);
}

TEST_CASE("parameter identities against the reference evaluator") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> us(0.6, 2.0), ut(-100.0, 100.0);
    for (int i = 0; i < 20; ++i) {
        const double sg = us(rng), t = ut(rng);
        const cd s(sg, t);
        const cd zr = oracle::riemann(s);
        CHECK(std::abs(hz_val(sg, t, 1.0) - zr) < 1e-10);
        CHECK(std::abs(hz_val(sg, t, 0.5) - (std::pow(cd(2, 0), s) - 1.0) * zr) < 1e-10);
        const cd thirds = hz_val(sg, t, 1.0 / 3.0) + hz_val(sg, t, 2.0 / 3.0) + hz_val(sg, t, 1.0);
        CHECK(std::abs(thirds - std::pow(cd(3, 0), s) * zr) < 1e-10);
    }
}

TEST_CASE("agreement with the independent Euler-Maclaurin evaluator") {
    for (double sg : {0.6, 1.0, 1.5, 2.0})
        for (double t : {0.5, 3.7, 41.0, 997.0})
            for (double a : {0.25, 0.5, 0.73, 1.0}) {
                const auto r = zeta::hurwitz_zeta({sg, t}, Alpha(a));
                const cd ref = oracle::hurwitz(cd(sg, t), a);
                CHECK(std::abs(r.value - ref) < 1e-9);
                CHECK(std::abs(r.value - ref) <= r.error_radius + 1e-10);
                CHECK(r.terms_used > 0);
            }
}

TEST_CASE("riemann zeta shares the alpha = 1 path") {
    const auto a = zeta::riemann_zeta({1.4, 17.0});
    const auto b = zeta::hurwitz_zeta({1.4, 17.0}, Alpha(1.0));
    CHECK(a.value == b.value);
}

TEST_CASE("zeta_one removes the n = 0 term") {
    const ComplexPoint s{0.8, 12.0};
    const Alpha a(0.42);
    const cd z = zeta::hurwitz_zeta(s, a).value;
    const cd z1 = zeta::zeta_one(s, a).value;
    CHECK(std::abs(z - z1 - std::pow(cd(0.42, 0), -s.to_complex())) < 1e-11);
}

TEST_CASE("derivatives match central differences") {
    const double h = 1e-5;
    const Alpha a(0.37);
    for (int k = 1; k <= 3; ++k) {
        const cd up = zeta::hurwitz_zeta({1.3 + h, 2.2}, a, k - 1).value;
        const cd dn = zeta::hurwitz_zeta({1.3 - h, 2.2}, a, k - 1).value;
        const cd fd = (up - dn) / (2.0 * h);
        const cd dv = zeta::hurwitz_zeta({1.3, 2.2}, a, k).value;
        CHECK(std::abs(dv - fd) < 1e-6 * std::max(1.0, std::abs(dv)));
    }
}

TEST_CASE("alpha derivative identity") {
    const double h = 1e-6;
    const cd fd = (hz_val(1.4, 3.0, 0.62 + h) - hz_val(1.4, 3.0, 0.62 - h)) / (2.0 * h);
    const cd rhs = -cd(1.4, 3.0) * hz_val(2.4, 3.0, 0.62);
    CHECK(std::abs(fd - rhs) < 1e-6 * std::abs(rhs));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(zeta::hurwitz_zeta({1.0, 0.0}, Alpha(0.5)), PoleError);
    CHECK_THROWS_AS(zeta::hurwitz_zeta({1.0, 1e-13}, Alpha(0.5)), PoleError);
    CHECK_THROWS_AS(zeta::hurwitz_zeta({5.5, 0.0}, Alpha(0.5)), DomainError);
    CHECK_THROWS_AS(zeta::hurwitz_zeta({-5.5, 0.0}, Alpha(0.5)), DomainError);
    CHECK_THROWS_AS(zeta::hurwitz_zeta({1.5, 2e7}, Alpha(0.5)), DomainError);
    CHECK_THROWS_AS(zeta::hurwitz_zeta({1.5, 0.0}, Alpha(0.5), 11), DomainError);
    CHECK_THROWS_AS(Alpha(0.0), DomainError);
    CHECK_THROWS_AS(Alpha(1.0000001), DomainError);
    CHECK_THROWS_AS(Precision::make(30, 1e-40), PrecisionError);
    CHECK_THROWS_AS(Precision::make(120, 1e-40), PrecisionError);
    CHECK_THROWS_AS(Precision::make(10, 1e-6), DomainError);
}

TEST_CASE("higher precision tiers tighten the reported radius") {
    const ComplexPoint s{1.5, 0.3};
    const Alpha a(0.7);
    const auto base = zeta::hurwitz_zeta(s, a);
    const auto mid = zeta::hurwitz_zeta(s, a, 0, Precision::make(50, 1e-30));
    const auto high = zeta::hurwitz_zeta(s, a, 0, Precision::make(100, 1e-60));
    CHECK(mid.error_radius <= base.error_radius);
    CHECK(mid.error_radius <= 1e-13);
    CHECK(high.error_radius <= 1e-13);
    CHECK(std::abs(base.value - mid.value) <= base.error_radius + mid.error_radius);
    CHECK(std::abs(mid.value - high.value) < 1e-14);

    // at larger t the double tier's accumulated rounding dominates its
    // radius, so the 50-digit tier reports a strictly smaller one
    const ComplexPoint far{0.6, 200.0};
    const auto dbl = zeta::hurwitz_zeta(far, a);
    const auto fine = zeta::hurwitz_zeta(far, a, 0, Precision::make(50, 1e-20));
    CHECK(fine.error_radius < dbl.error_radius);
    CHECK(fine.error_radius < 2e-15);
    CHECK(std::abs(dbl.value - fine.value) <= dbl.error_radius + fine.error_radius);
}

TEST_CASE("partial sums follow the stated asymptotics") {
    const auto r6 = zeta::partial_sum_asymptotics(1e5, 0.6);
    CHECK(std::fabs(r6.residual) < std::pow(1e5, -0.6));
    CHECK(r6.sum > 0);
    const auto r1 = zeta::partial_sum_asymptotics(1e4, 1.0);
    CHECK(std::fabs(r1.residual) < 1e-4);
    const auto r2 = zeta::partial_sum_asymptotics(1e5, 2.0);
    CHECK(std::fabs(r2.residual) < 1e-9);
    CHECK_THROWS_AS(zeta::partial_sum_asymptotics(1.0, 0.6), DomainError);
    CHECK_THROWS_AS(zeta::partial_sum_asymptotics(1e4, 2.5), DomainError);
    CHECK_THROWS_AS(zeta::partial_sum_asymptotics(3e7, 0.6), CapError);
}

TEST_CASE("pair sums stay bounded after normalization") {
    const auto r0 = zeta::pair_sum_bound(2000, 0.75, 0.618, 0);
    const auto r1 = zeta::pair_sum_bound(2000, 0.75, 0.618, 1);
    CHECK(r0.sum > 0);
    CHECK(r1.sum > 0);
    CHECK(r0.ratio > 1.0);
    CHECK(r0.ratio < 50.0);
    CHECK(r1.ratio > 0.5);
    CHECK(r1.ratio < 20.0);
    const auto d0 = zeta::pair_sum_bound(4000, 0.75, 0.618, 0);
    CHECK(d0.ratio < 1.5 * r0.ratio);
}

TEST_CASE("elementary log ratio lower bound") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ue(-6.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::pow(10.0, ue(rng));
        const double y = std::pow(10.0, ue(rng));
        if (x == y) continue;
        const auto r = zeta::log_ratio_bound(x, y);
        CHECK(r.holds);
        CHECK(r.lhs >= r.rhs);
    }
    CHECK_THROWS_AS(zeta::log_ratio_bound(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(zeta::log_ratio_bound(-1.0, 2.0), DomainError);
    CHECK_THROWS_AS(zeta::log_ratio_bound(0.0, 2.0), DomainError);
}
