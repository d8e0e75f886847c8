#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "latres/hyperbolic.hpp"

namespace hyp = latres::hyp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("longitudinal exponential sum collapses to N delta_{n,0}") {
    for (int n_sites = 1; n_sites <= 32; ++n_sites) {
        for (int mode = 0; mode < n_sites; ++mode) {
            std::complex<double> sum{0.0, 0.0};
            for (int x = 1; x <= n_sites; ++x)
                sum += std::exp(std::complex<double>(0.0, 2.0 * kPi * x * mode / n_sites));
            const double want = mode == 0 ? n_sites : 0.0;
            CHECK(std::abs(sum - want) < 1e-10);
        }
    }
}

TEST_CASE("cosine-squared sum over the DD angles equals M/2") {
    for (int m_rows = 1; m_rows <= 64; ++m_rows) {
        double sum = 0.0;
        for (int m = 0; m < m_rows; ++m) {
            const double c = std::cos(kPi * (m + 1) / (2.0 * (m_rows + 1)));
            sum += c * c;
        }
        CHECK(std::abs(sum - 0.5 * m_rows) < 1e-12);
    }
}

TEST_CASE("cotangent sum equals M+1-y at integer y") {
    for (int m_rows : {1, 2, 3, 5, 8, 13, 21, 40, 64}) {
        for (int y = 1; y <= m_rows; ++y) {
            double sum = 0.0;
            for (int m = 0; m < m_rows; ++m) {
                const double phi = kPi * (m + 1) / (2.0 * (m_rows + 1));
                sum += std::sin(2.0 * y * phi) / std::tan(phi);
            }
            CHECK(std::abs(sum - (m_rows + 1 - y)) < 1e-9);
        }
    }
}

TEST_CASE("summation identity: cosine sum equals the hyperbolic ratio") {
    for (int n_sites = 1; n_sites <= 16; ++n_sites) {
        for (int ell = 0; ell <= n_sites; ++ell) {
            for (double lam : {0.1, 0.5, 1.0, 2.0}) {
                double lhs = 0.0;
                const double ch2 = std::cosh(2.0 * lam);
                for (int n = 0; n < n_sites; ++n) {
                    const double theta = kPi * n / n_sites;
                    lhs += std::cos(2.0 * ell * theta) / (ch2 - std::cos(2.0 * theta));
                }
                lhs /= n_sites;
                const double rhs = hyp::cosh_over_sinh_sinh((n_sites - 2.0 * ell) * lam,
                                                            2.0 * lam, n_sites * lam);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("hyperbolic ratios agree with the naive forms at moderate arguments") {
    for (double a : {0.0, 0.3, 1.7, 5.0, -2.4}) {
        for (double b : {0.2, 1.0, 3.5}) {
            for (double c : {0.4, 2.0, 6.0}) {
                const double naive = std::cosh(a) / (std::sinh(b) * std::sinh(c));
                CHECK(hyp::cosh_over_sinh_sinh(a, b, c) ==
                      doctest::Approx(naive).epsilon(1e-13));
            }
        }
    }
    for (double a : {0.0, 0.5, 2.0}) {
        for (double b : {0.25, 1.5, 4.0}) {
            const double c = a + b;
            if (c == 0.0) continue;
            const double naive = std::sinh(a) * std::sinh(b) / std::sinh(c);
            CHECK(hyp::sinh_sinh_over_sinh(a, b, c) == doctest::Approx(naive).epsilon(1e-13));
        }
    }
    CHECK(hyp::coth(1.0) == doctest::Approx(std::cosh(1.0) / std::sinh(1.0)).epsilon(1e-14));
}

TEST_CASE("hyperbolic ratios stay finite where naive sinh overflows") {
    // N*lam ~ 1e4: sinh overflows past ~710, the factored forms must not.
    const double lam = 2.0;
    const double n = 5000.0;
    const double v = hyp::cosh_over_sinh_sinh((n - 2.0 * 1250.0) * lam, 2.0 * lam, n * lam);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    const double w = hyp::sinh_sinh_over_sinh(1250.0 * lam, (n - 1250.0) * lam, n * lam);
    CHECK(std::isfinite(w));
    CHECK(w == doctest::Approx(0.5).epsilon(1e-12));  // saturates at 1/2 for large arguments
    CHECK(hyp::coth(n * lam) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::isfinite(hyp::coth(1e-8)));
}
