#include "hz/errors.hpp"
#include "hz/simd/kernels.hpp"

namespace hz::simd {

bool avx2_available() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(HZ_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

PhaseFn select_phase(Kind kind) {
    switch (kind) {
        case Kind::scalar:
            return &phase_sum_scalar;
        case Kind::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && defined(HZ_HAVE_AVX2_TU)
            if (avx2_available()) return &phase_sum_avx2;
#endif
            throw DomainError("simd: avx2 kernel requested but unavailable");
        case Kind::auto_select:
        default:
#if (defined(__x86_64__) || defined(_M_X64)) && defined(HZ_HAVE_AVX2_TU)
            if (avx2_available()) return &phase_sum_avx2;
#endif
            return &phase_sum_scalar;
    }
}

BumpFn select_bump(Kind kind) {
    switch (kind) {
        case Kind::scalar:
            return &bump_scan_scalar;
        case Kind::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && defined(HZ_HAVE_AVX2_TU)
            if (avx2_available()) return &bump_scan_avx2;
#endif
            throw DomainError("simd: avx2 kernel requested but unavailable");
        case Kind::auto_select:
        default:
#if (defined(__x86_64__) || defined(_M_X64)) && defined(HZ_HAVE_AVX2_TU)
            if (avx2_available()) return &bump_scan_avx2;
#endif
            return &bump_scan_scalar;
    }
}

}  // namespace hz::simd
