// AVX2+FMA variants.  This TU is compiled with -mavx2 -mfma on x86_64 and
// must only be entered after the dispatcher has checked CPU support.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "hz/simd/kernels.hpp"

namespace hz::simd {

void phase_sum_avx2(const PhaseSumArgs& a) {
    const std::size_t planes = static_cast<std::size_t>(a.kmax) + 1;
    std::memset(a.out_re, 0, planes * a.J * sizeof(double));
    std::memset(a.out_im, 0, planes * a.J * sizeof(double));

    for (std::size_t j0 = 0; j0 < a.J; j0 += BLOCK) {
        const std::size_t je = std::min(a.J, j0 + BLOCK);
        const std::size_t jv = j0 + ((je - j0) / 4) * 4;  // vector part
        const double tau_start = a.tau0 + static_cast<double>(j0) * a.h;

        for (std::size_t i = 0; i < a.n; ++i) {
            const double wv = a.w[i];
            // one sincos pair for the block start, one for the lane step
            const double cr0 = std::cos(tau_start * wv), ci0 = -std::sin(tau_start * wv);
            const double sr = std::cos(a.h * wv), si = -std::sin(a.h * wv);
            // lanes j0..j0+3 by serial rotation from the block start
            double lr[4], li[4];
            lr[0] = cr0;
            li[0] = ci0;
            for (int l = 1; l < 4; ++l) {
                lr[l] = lr[l - 1] * sr - li[l - 1] * si;
                li[l] = lr[l - 1] * si + li[l - 1] * sr;
            }
            __m256d rot_re = _mm256_loadu_pd(lr);
            __m256d rot_im = _mm256_loadu_pd(li);
            // step^4 for advancing all four lanes at once
            const double sr2 = sr * sr - si * si, si2 = 2.0 * sr * si;
            const double sr4 = sr2 * sr2 - si2 * si2, si4 = 2.0 * sr2 * si2;
            const __m256d step_re = _mm256_set1_pd(sr4);
            const __m256d step_im = _mm256_set1_pd(si4);

            for (std::size_t j = j0; j < jv; j += 4) {
                for (int k = 0; k <= a.kmax; ++k) {
                    const __m256d av =
                        _mm256_set1_pd(a.amp[static_cast<std::size_t>(k) * a.n + i]);
                    double* pre = a.out_re + static_cast<std::size_t>(k) * a.J + j;
                    double* pim = a.out_im + static_cast<std::size_t>(k) * a.J + j;
                    _mm256_storeu_pd(pre, _mm256_fmadd_pd(av, rot_re, _mm256_loadu_pd(pre)));
                    _mm256_storeu_pd(pim, _mm256_fmadd_pd(av, rot_im, _mm256_loadu_pd(pim)));
                }
                const __m256d nr = _mm256_fmsub_pd(rot_re, step_re, _mm256_mul_pd(rot_im, step_im));
                rot_im = _mm256_fmadd_pd(rot_re, step_im, _mm256_mul_pd(rot_im, step_re));
                rot_re = nr;
            }

            // scalar tail of the block (J not divisible by 4)
            if (jv < je) {
                alignas(32) double tr[4], ti[4];
                _mm256_store_pd(tr, rot_re);
                _mm256_store_pd(ti, rot_im);
                double cr = tr[0], ci = ti[0];
                for (std::size_t j = jv; j < je; ++j) {
                    for (int k = 0; k <= a.kmax; ++k) {
                        const double av = a.amp[static_cast<std::size_t>(k) * a.n + i];
                        a.out_re[static_cast<std::size_t>(k) * a.J + j] += av * cr;
                        a.out_im[static_cast<std::size_t>(k) * a.J + j] += av * ci;
                    }
                    const double nr = cr * sr - ci * si;
                    ci = cr * si + ci * sr;
                    cr = nr;
                }
            }
        }
    }
}

void bump_scan_avx2(const BumpScanArgs& a) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d invd = _mm256_set1_pd(a.inv_delta);
    const __m256d lnorm = _mm256_set1_pd(a.log_norm);
    const __m256d hstep = _mm256_set1_pd(a.h);

    const std::size_t Jv = (a.J / 4) * 4;
    for (std::size_t j = 0; j < Jv; j += 4) {
        const __m256d idx = _mm256_set_pd(static_cast<double>(j + 3), static_cast<double>(j + 2),
                                          static_cast<double>(j + 1), static_cast<double>(j));
        const __m256d tau = _mm256_fmadd_pd(idx, hstep, _mm256_set1_pd(a.tau0));
        __m256d arg = lnorm;
        __m256d alive = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        for (std::size_t i = 0; i < a.q; ++i) {
            __m256d y = _mm256_fmadd_pd(_mm256_set1_pd(a.freq[i]), tau,
                                        _mm256_set1_pd(a.shift[i]));
            y = _mm256_sub_pd(y, _mm256_floor_pd(y));
            const __m256d d = _mm256_min_pd(y, _mm256_sub_pd(one, y));
            const __m256d x = _mm256_mul_pd(d, invd);
            const __m256d ok = _mm256_cmp_pd(x, one, _CMP_LT_OQ);
            alive = _mm256_and_pd(alive, ok);
            // contribute only on still-alive lanes; dead lanes output 0 anyway
            const __m256d den = _mm256_fnmadd_pd(x, x, one);  // 1 - x^2
            const __m256d contrib = _mm256_div_pd(one, den);
            arg = _mm256_sub_pd(arg, _mm256_and_pd(contrib, ok));
            if (_mm256_movemask_pd(alive) == 0) break;
        }
        alignas(32) double av[4], am[4];
        _mm256_store_pd(av, arg);
        _mm256_store_pd(am, alive);
        for (int l = 0; l < 4; ++l) {
            a.out[j + l] = am[l] != 0.0 ? std::exp(av[l]) : 0.0;
        }
    }
    if (Jv < a.J) {
        BumpScanArgs tail = a;
        tail.tau0 = a.tau0 + static_cast<double>(Jv) * a.h;
        tail.J = a.J - Jv;
        tail.out = a.out + Jv;
        bump_scan_scalar(tail);
    }
}

}  // namespace hz::simd

#endif  // x86_64
