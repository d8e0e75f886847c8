#pragma once

#include <cmath>

// Hyperbolic-function ratios in exponential form with the dominant exponent
// factored out, so products like sinh(N*lam) never overflow even for
// N*lam ~ 1e4.  Naive sinh/cosh overflow near an argument of 710.

namespace latres::hyp {

// coth(x), x > 0.
inline double coth(double x) { return 1.0 / std::tanh(x); }

// cosh(a) / (sinh(b) * sinh(c)) for b, c > 0 and |a| <= b + c.
inline double cosh_over_sinh_sinh(double a, double b, double c) {
    a = std::abs(a);
    const double fb = -std::expm1(-2.0 * b);
    const double fc = -std::expm1(-2.0 * c);
    return 2.0 * std::exp(a - b - c) * (1.0 + std::exp(-2.0 * a)) / (fb * fc);
}

// sinh(a) * sinh(b) / sinh(c) for a, b >= 0, c > 0, with a + b not exceeding
// c by more than a rounding error (the exponent a + b - c stays near zero).
inline double sinh_sinh_over_sinh(double a, double b, double c) {
    const double fa = -std::expm1(-2.0 * a);
    const double fb = -std::expm1(-2.0 * b);
    const double fc = -std::expm1(-2.0 * c);
    return std::exp(a + b - c) * fa * fb / (2.0 * fc);
}

}  // namespace latres::hyp
