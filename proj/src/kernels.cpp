#include "latres/kernels.hpp"

namespace latres::kernels {

double mode_sum_scalar(const double* t0, const double* t1, const double* t2, const double* t3,
                       double a0, double a1, double a2, double a3,
                       const double* den, double shift, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double num = a0 * t0[i] + a1 * t1[i] + a2 * t2[i] + a3 * t3[i];
        acc += num / (den[i] + shift);
    }
    return acc;
}

namespace {

using ModeSumFn = double (*)(const double*, const double*, const double*, const double*,
                             double, double, double, double,
                             const double*, double, std::size_t);

struct Backend {
    ModeSumFn fn;
    const char* name;
};

Backend resolve() {
#if LATRES_KERNELS_X86
    if (cpu_has_avx2()) return {&mode_sum_avx2, "avx2"};
#endif
    return {&mode_sum_scalar, "scalar"};
}

const Backend& backend() {
    static const Backend b = resolve();
    return b;
}

}  // namespace

#if LATRES_KERNELS_X86
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

double mode_sum(const double* t0, const double* t1, const double* t2, const double* t3,
                double a0, double a1, double a2, double a3,
                const double* den, double shift, std::size_t len) {
    return backend().fn(t0, t1, t2, t3, a0, a1, a2, a3, den, shift, len);
}

const char* active_backend() { return backend().name; }

}  // namespace latres::kernels
