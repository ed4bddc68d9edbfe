#include <cmath>
#include <cstring>

#include "hz/simd/kernels.hpp"

namespace hz::simd {

void phase_sum_scalar(const PhaseSumArgs& a) {
    const std::size_t planes = static_cast<std::size_t>(a.kmax) + 1;
    std::memset(a.out_re, 0, planes * a.J * sizeof(double));
    std::memset(a.out_im, 0, planes * a.J * sizeof(double));

    for (std::size_t j0 = 0; j0 < a.J; j0 += BLOCK) {
        const std::size_t je = std::min(a.J, j0 + BLOCK);
        const double tau_start = a.tau0 + static_cast<double>(j0) * a.h;
        for (std::size_t i = 0; i < a.n; ++i) {
            const double wv = a.w[i];
            double cr = std::cos(tau_start * wv);
            double ci = -std::sin(tau_start * wv);
            const double sr = std::cos(a.h * wv);
            const double si = -std::sin(a.h * wv);
            for (std::size_t j = j0; j < je; ++j) {
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

void bump_scan_scalar(const BumpScanArgs& a) {
    for (std::size_t j = 0; j < a.J; ++j) {
        const double tau = a.tau0 + static_cast<double>(j) * a.h;
        double arg = a.log_norm;
        bool alive = true;
        for (std::size_t i = 0; i < a.q && alive; ++i) {
            double y = a.freq[i] * tau + a.shift[i];
            y -= std::floor(y);
            const double d = y < 0.5 ? y : 1.0 - y;
            const double x = d * a.inv_delta;
            if (x >= 1.0) {
                alive = false;
            } else {
                arg -= 1.0 / (1.0 - x * x);
            }
        }
        a.out[j] = alive ? std::exp(arg) : 0.0;
    }
}

}  // namespace hz::simd
