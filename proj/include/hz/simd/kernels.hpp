#pragma once

// Hot inner kernels, each in a scalar reference version and an AVX2+FMA
// variant selected at runtime.  Both variants share the same blocking and
// the same formulas, so they agree to rotation-recurrence drift (~1e-13
// over a block), which the equivalence tests pin down.
//
// phase_sum: S_k(tau_j) = sum_i amp[k][i] * exp(-i tau_j w[i]) on the
// arithmetic grid tau_j = tau0 + j h, for k = 0..kmax.  Within a block of
// BLOCK grid points the per-term phase advances by a precomputed complex
// step (one sincos per term per block); blocks restart from fresh sincos
// so drift cannot accumulate across the window.
//
// bump_scan: product-mollifier row for the kernel-measure quadrature,
// out[j] = exp(sum_i -1/(1-x_i^2) + log_norm) with
// x_i = dist(freq[i] tau_j + shift[i], Z) / delta, zero when any |x_i|>=1.

#include <cstddef>

namespace hz::simd {

inline constexpr std::size_t BLOCK = 512;

enum class Kind { auto_select, scalar, avx2 };

bool avx2_available();

struct PhaseSumArgs {
    const double* w = nullptr;    // n phase speeds
    const double* amp = nullptr;  // (kmax+1) x n amplitudes, row-major
    std::size_t n = 0;
    int kmax = 0;
    double tau0 = 0;
    double h = 0;
    std::size_t J = 0;
    double* out_re = nullptr;  // (kmax+1) x J, row-major
    double* out_im = nullptr;
};

void phase_sum_scalar(const PhaseSumArgs& a);
void phase_sum_avx2(const PhaseSumArgs& a);

using PhaseFn = void (*)(const PhaseSumArgs&);
PhaseFn select_phase(Kind kind);

struct BumpScanArgs {
    const double* freq = nullptr;   // q torus speeds
    const double* shift = nullptr;  // q phase offsets
    std::size_t q = 0;
    double inv_delta = 0;
    double log_norm = 0;  // -q * log(normalization integral)
    double tau0 = 0;
    double h = 0;
    std::size_t J = 0;
    double* out = nullptr;  // J values
};

void bump_scan_scalar(const BumpScanArgs& a);
void bump_scan_avx2(const BumpScanArgs& a);

using BumpFn = void (*)(const BumpScanArgs&);
BumpFn select_bump(Kind kind);

}  // namespace hz::simd
