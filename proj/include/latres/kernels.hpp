#pragma once

#include <cstddef>

// Inner reduction kernels for the closed-form resistance engines.  Every
// double-sum engine reduces, per transverse mode, to the same rational
// reduction over precomputed per-mode tables:
//
//   sum_i (a0*t0[i] + a1*t1[i] + a2*t2[i] + a3*t3[i]) / (den[i] + shift)
//
// A scalar reference kernel always exists; on x86-64 an AVX2+FMA variant is
// selected at runtime when the CPU supports it.  The two are equivalence-
// tested against each other (summation order differs, so agreement is to
// rounding, not bitwise).

namespace latres::kernels {

double mode_sum_scalar(const double* t0, const double* t1, const double* t2, const double* t3,
                       double a0, double a1, double a2, double a3,
                       const double* den, double shift, std::size_t len);

#if defined(__x86_64__) || defined(_M_X64)
#define LATRES_KERNELS_X86 1
double mode_sum_avx2(const double* t0, const double* t1, const double* t2, const double* t3,
                     double a0, double a1, double a2, double a3,
                     const double* den, double shift, std::size_t len);
bool cpu_has_avx2();
#else
#define LATRES_KERNELS_X86 0
#endif

// Dispatched entry point used by the engines.
double mode_sum(const double* t0, const double* t1, const double* t2, const double* t3,
                double a0, double a1, double a2, double a3,
                const double* den, double shift, std::size_t len);

// Backend the dispatcher resolved to: "avx2" or "scalar".
const char* active_backend();

}  // namespace latres::kernels
