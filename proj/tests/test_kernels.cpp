#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "latres/kernels.hpp"

namespace k = latres::kernels;

namespace {

struct Inputs {
    std::vector<double> t0, t1, t2, t3, den;
    double a0, a1, a2, a3, shift;
};

Inputs random_inputs(std::size_t len, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.05, 4.0);
    Inputs in;
    in.t0.resize(len);
    in.t1.resize(len);
    in.t2.resize(len);
    in.t3.resize(len);
    in.den.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        in.t0[i] = coef(rng);
        in.t1[i] = coef(rng);
        in.t2[i] = coef(rng);
        in.t3[i] = coef(rng);
        in.den[i] = pos(rng);
    }
    in.a0 = coef(rng);
    in.a1 = coef(rng);
    in.a2 = coef(rng);
    in.a3 = coef(rng);
    in.shift = pos(rng);
    return in;
}

// Magnitude of the reduction, the natural scale for rounding differences
// between summation orders.
double term_scale(const Inputs& in) {
    double s = 0.0;
    for (std::size_t i = 0; i < in.t0.size(); ++i) {
        const double num = in.a0 * in.t0[i] + in.a1 * in.t1[i] + in.a2 * in.t2[i] +
                           in.a3 * in.t3[i];
        s += std::abs(num / (in.den[i] + in.shift));
    }
    return s;
}

double run(double (*fn)(const double*, const double*, const double*, const double*, double,
                        double, double, double, const double*, double, std::size_t),
           const Inputs& in) {
    return fn(in.t0.data(), in.t1.data(), in.t2.data(), in.t3.data(), in.a0, in.a1, in.a2,
              in.a3, in.den.data(), in.shift, in.t0.size());
}

}  // namespace

TEST_CASE("scalar kernel matches a plain reference loop") {
    for (std::size_t len : {0u, 1u, 2u, 3u, 5u, 17u, 64u}) {
        const Inputs in = random_inputs(len, 1000 + static_cast<unsigned>(len));
        double want = 0.0;
        for (std::size_t i = 0; i < len; ++i)
            want += (in.a0 * in.t0[i] + in.a1 * in.t1[i] + in.a2 * in.t2[i] +
                     in.a3 * in.t3[i]) /
                    (in.den[i] + in.shift);
        CHECK(run(&k::mode_sum_scalar, in) == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("dispatcher resolves to a known backend") {
    const std::string backend = k::active_backend();
    CHECK((backend == "avx2" || backend == "scalar"));
#if LATRES_KERNELS_X86
    if (k::cpu_has_avx2()) CHECK(backend == "avx2");
#endif
    const Inputs in = random_inputs(33, 7);
    CHECK(run(&k::mode_sum, in) == doctest::Approx(run(&k::mode_sum_scalar, in))
                                       .epsilon(1e-12));
}

#if LATRES_KERNELS_X86
TEST_CASE("avx2 kernel is equivalent to the scalar reference") {
    if (!k::cpu_has_avx2()) return;  // nothing to test on this machine
    // Lengths straddle the 8-wide main loop, the 4-wide tail and the scalar
    // remainder.
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 12u, 15u, 16u, 31u, 100u, 1023u}) {
        for (unsigned seed : {1u, 2u, 3u}) {
            const Inputs in = random_inputs(len, seed * 131 + static_cast<unsigned>(len));
            const double scalar = run(&k::mode_sum_scalar, in);
            const double avx = run(&k::mode_sum_avx2, in);
            const double tol = 1e-13 * std::max(1.0, term_scale(in));
            CHECK(std::abs(scalar - avx) <= tol);
        }
    }
}
#endif
