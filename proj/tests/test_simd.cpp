#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hz/algebraic.hpp"
#include "hz/errors.hpp"
#include "hz/scan.hpp"
#include "hz/simd/kernels.hpp"

using namespace hz;

TEST_CASE("phase sum variants agree") {
    if (!simd::avx2_available()) return;
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> uw(0.01, 6.0), ua(-2.0, 2.0);
    const int kmax = 2;
    for (std::size_t n : {1u, 7u, 64u, 513u})
        for (std::size_t J : {1u, 5u, 512u, 1000u}) {
            std::vector<double> w(n), amp((kmax + 1) * n);
            for (auto& x : w) x = uw(rng);
            for (auto& x : amp) x = ua(rng);
            std::vector<double> re_s((kmax + 1) * J), im_s((kmax + 1) * J);
            std::vector<double> re_v((kmax + 1) * J), im_v((kmax + 1) * J);

            simd::PhaseSumArgs a;
            a.w = w.data();
            a.amp = amp.data();
            a.n = n;
            a.kmax = kmax;
            a.tau0 = 50.0;
            a.h = 0.013;
            a.J = J;
            a.out_re = re_s.data();
            a.out_im = im_s.data();
            simd::phase_sum_scalar(a);
            a.out_re = re_v.data();
            a.out_im = im_v.data();
            simd::phase_sum_avx2(a);

            double amp_sum = 0.0;
            for (double x : amp) amp_sum += std::fabs(x);
            const double tol = 1e-12 * (1.0 + amp_sum);
            for (std::size_t i = 0; i < re_s.size(); ++i) {
                CHECK(std::fabs(re_s[i] - re_v[i]) < tol);
                CHECK(std::fabs(im_s[i] - im_v[i]) < tol);
            }
        }
}

TEST_CASE("bump scan variants agree") {
    if (!simd::avx2_available()) return;
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> uf(0.05, 0.8), us(0.0, 1.0);
    const double I = 0.44399381616808;
    for (std::size_t q : {1u, 2u, 5u})
        for (std::size_t J : {3u, 512u, 2000u}) {
            std::vector<double> freq(q), shift(q);
            for (auto& x : freq) x = uf(rng);
            for (auto& x : shift) x = us(rng);
            std::vector<double> out_s(J), out_v(J);

            simd::BumpScanArgs a;
            a.freq = freq.data();
            a.shift = shift.data();
            a.q = q;
            a.inv_delta = 4.0;
            a.log_norm = -static_cast<double>(q) * std::log(I);
            a.tau0 = 10.0;
            a.h = 0.01;
            a.J = J;
            a.out = out_s.data();
            simd::bump_scan_scalar(a);
            a.out = out_v.data();
            simd::bump_scan_avx2(a);

            for (std::size_t i = 0; i < J; ++i) CHECK(std::fabs(out_s[i] - out_v[i]) < 1e-12);
        }
}

TEST_CASE("kind selection") {
    CHECK(simd::select_phase(simd::Kind::scalar) == &simd::phase_sum_scalar);
    CHECK(simd::select_bump(simd::Kind::scalar) == &simd::bump_scan_scalar);
    CHECK(simd::select_phase(simd::Kind::auto_select) != nullptr);
    if (!simd::avx2_available()) {
        CHECK_THROWS_AS(simd::select_phase(simd::Kind::avx2), DomainError);
        CHECK_THROWS_AS(simd::select_bump(simd::Kind::avx2), DomainError);
    } else {
        CHECK(simd::select_phase(simd::Kind::avx2) == &simd::phase_sum_avx2);
        CHECK(simd::select_bump(simd::Kind::avx2) == &simd::bump_scan_avx2);
    }
}

TEST_CASE("grid evaluators agree across kinds") {
    if (!simd::avx2_available()) return;
    const Alpha a = alg::alpha_of(alg::preset_sqrt2m1());
    const scan::GridSpec grid{100.0, 0.01, 256};

    const auto es = scan::em_grid(1.0, a, 2, grid, simd::Kind::scalar);
    const auto ev = scan::em_grid(1.0, a, 2, grid, simd::Kind::avx2);
    REQUIRE(es.values.size() == 3);
    for (int k = 0; k <= 2; ++k)
        for (std::size_t j = 0; j < grid.count; ++j)
            CHECK(std::abs(es.values[static_cast<size_t>(k)][j] -
                           ev.values[static_cast<size_t>(k)][j]) < 1e-12);

    const auto ts = scan::truncated_grid(1.0, a, 1, 1.0 / 3.0, grid, simd::Kind::scalar);
    const auto tv = scan::truncated_grid(1.0, a, 1, 1.0 / 3.0, grid, simd::Kind::avx2);
    for (int k = 0; k <= 1; ++k)
        for (std::size_t j = 0; j < grid.count; ++j)
            CHECK(std::abs(ts.values[static_cast<size_t>(k)][j] -
                           tv.values[static_cast<size_t>(k)][j]) < 1e-12);
    CHECK(ts.cutoff_min >= 1);
    CHECK(ts.cutoff_max >= ts.cutoff_min);
}
