// AVX2+FMA variant of the mode-sum kernel.  Compiled with -mavx2 -mfma on
// x86-64 only; callers must gate on cpu_has_avx2().

#include "latres/kernels.hpp"

#if LATRES_KERNELS_X86

#include <immintrin.h>

namespace latres::kernels {

double mode_sum_avx2(const double* t0, const double* t1, const double* t2, const double* t3,
                     double a0, double a1, double a2, double a3,
                     const double* den, double shift, std::size_t len) {
    const __m256d va0 = _mm256_set1_pd(a0);
    const __m256d va1 = _mm256_set1_pd(a1);
    const __m256d va2 = _mm256_set1_pd(a2);
    const __m256d va3 = _mm256_set1_pd(a3);
    const __m256d vshift = _mm256_set1_pd(shift);

    // Two accumulators to hide the division latency.
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        __m256d num0 = _mm256_mul_pd(va0, _mm256_loadu_pd(t0 + i));
        num0 = _mm256_fmadd_pd(va1, _mm256_loadu_pd(t1 + i), num0);
        num0 = _mm256_fmadd_pd(va2, _mm256_loadu_pd(t2 + i), num0);
        num0 = _mm256_fmadd_pd(va3, _mm256_loadu_pd(t3 + i), num0);
        const __m256d d0 = _mm256_add_pd(_mm256_loadu_pd(den + i), vshift);

        __m256d num1 = _mm256_mul_pd(va0, _mm256_loadu_pd(t0 + i + 4));
        num1 = _mm256_fmadd_pd(va1, _mm256_loadu_pd(t1 + i + 4), num1);
        num1 = _mm256_fmadd_pd(va2, _mm256_loadu_pd(t2 + i + 4), num1);
        num1 = _mm256_fmadd_pd(va3, _mm256_loadu_pd(t3 + i + 4), num1);
        const __m256d d1 = _mm256_add_pd(_mm256_loadu_pd(den + i + 4), vshift);

        acc0 = _mm256_add_pd(acc0, _mm256_div_pd(num0, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_div_pd(num1, d1));
    }
    for (; i + 4 <= len; i += 4) {
        __m256d num = _mm256_mul_pd(va0, _mm256_loadu_pd(t0 + i));
        num = _mm256_fmadd_pd(va1, _mm256_loadu_pd(t1 + i), num);
        num = _mm256_fmadd_pd(va2, _mm256_loadu_pd(t2 + i), num);
        num = _mm256_fmadd_pd(va3, _mm256_loadu_pd(t3 + i), num);
        const __m256d d = _mm256_add_pd(_mm256_loadu_pd(den + i), vshift);
        acc0 = _mm256_add_pd(acc0, _mm256_div_pd(num, d));
    }

    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double acc = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));

    for (; i < len; ++i) {
        const double num = a0 * t0[i] + a1 * t1[i] + a2 * t2[i] + a3 * t3[i];
        acc += num / (den[i] + shift);
    }
    return acc;
}

}  // namespace latres::kernels

#endif  // LATRES_KERNELS_X86
