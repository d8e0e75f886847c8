#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace latres::spectra {

// Boundary rule applied to the 1D chain Laplacian (L f)(x) = 2f(x) - f(x+1) - f(x-1).
enum class BoundaryKind {
    Periodic,            // f(1) = f(N+1)
    Free,                // f(0) = f(1), f(N) = f(N+1)
    DirichletDirichlet,  // f(0) = f(N+1) = 0
    DirichletNeumann,    // f(0) = 0, f(N) = f(N+1)
};

const char* to_string(BoundaryKind kind);

// Closed-form eigen-system of the 1D chain Laplacian under one boundary rule.
//
// Modes keep the closed-form order n = 0..N-1 (no sorting by magnitude); sites
// run x = 1..N.  The Periodic family is complex and all inner products use
// conjugation; the other three families are real.
class Spectrum1D {
public:
    Spectrum1D(BoundaryKind kind, int size);

    BoundaryKind kind() const { return kind_; }
    int size() const { return size_; }

    // theta_n (Periodic/Free) or phi_n (DD/DN), radians.
    const std::vector<double>& angles() const { return angles_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    // f_n(x) for mode n in [0, N-1] and site x in [1, N].
    std::complex<double> eigenvector(int n, int x) const;

    bool complex_family() const { return kind_ == BoundaryKind::Periodic; }

private:
    BoundaryKind kind_;
    int size_;
    std::vector<double> angles_;
    std::vector<double> eigenvalues_;
    double norm0_ = 0.0;  // mode-0 normalization (Free constant mode)
    double norm_ = 0.0;   // generic normalization
};

// Full eigen-system for the given boundary rule; throws std::invalid_argument
// for size < 1.
Spectrum1D spectrum(BoundaryKind kind, int size);

// The explicit matrix the closed forms diagonalize (tridiagonal, plus wrap
// entries for Periodic).  Used by the residual tests and the oracle.
Eigen::MatrixXd laplacian_matrix(BoundaryKind kind, int size);

}  // namespace latres::spectra
