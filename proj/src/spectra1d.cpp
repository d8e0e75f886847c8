#include "latres/spectra1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latres::spectra {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::Periodic: return "periodic";
        case BoundaryKind::Free: return "free";
        case BoundaryKind::DirichletDirichlet: return "dd";
        case BoundaryKind::DirichletNeumann: return "dn";
    }
    return "?";
}

Spectrum1D::Spectrum1D(BoundaryKind kind, int size) : kind_(kind), size_(size) {
    if (size < 1) throw std::invalid_argument("Spectrum1D: size must be >= 1");
    angles_.resize(size);
    eigenvalues_.resize(size);
    const double n_ = static_cast<double>(size);
    switch (kind) {
        case BoundaryKind::Periodic:
            for (int n = 0; n < size; ++n) {
                angles_[n] = kPi * n / n_;
                eigenvalues_[n] = 2.0 - 2.0 * std::cos(2.0 * angles_[n]);
            }
            norm_ = std::sqrt(1.0 / n_);
            break;
        case BoundaryKind::Free:
            // Same angles as Periodic but the eigenvalue uses the half angle.
            for (int n = 0; n < size; ++n) {
                angles_[n] = kPi * n / n_;
                eigenvalues_[n] = 2.0 - 2.0 * std::cos(angles_[n]);
            }
            norm0_ = std::sqrt(1.0 / n_);
            norm_ = std::sqrt(2.0 / n_);
            break;
        case BoundaryKind::DirichletDirichlet:
            for (int n = 0; n < size; ++n) {
                angles_[n] = kPi * (n + 1) / (2.0 * (n_ + 1.0));
                eigenvalues_[n] = 2.0 - 2.0 * std::cos(2.0 * angles_[n]);
            }
            norm_ = std::sqrt(2.0 / (n_ + 1.0));
            break;
        case BoundaryKind::DirichletNeumann:
            for (int n = 0; n < size; ++n) {
                angles_[n] = kPi * (n + 0.5) / (2.0 * n_ + 1.0);
                eigenvalues_[n] = 2.0 - 2.0 * std::cos(2.0 * angles_[n]);
            }
            norm_ = 2.0 / std::sqrt(2.0 * n_ + 1.0);
            break;
    }
}

std::complex<double> Spectrum1D::eigenvector(int n, int x) const {
    if (n < 0 || n >= size_) throw std::invalid_argument("Spectrum1D: mode index out of range");
    if (x < 1 || x > size_) throw std::invalid_argument("Spectrum1D: site out of range");
    switch (kind_) {
        case BoundaryKind::Periodic:
            return std::polar(norm_, 2.0 * angles_[n] * x);
        case BoundaryKind::Free:
            if (n == 0) return {norm0_, 0.0};
            return {norm_ * std::cos((x - 0.5) * angles_[n]), 0.0};
        case BoundaryKind::DirichletDirichlet:
        case BoundaryKind::DirichletNeumann:
            return {norm_ * std::sin(2.0 * angles_[n] * x), 0.0};
    }
    return {};
}

Spectrum1D spectrum(BoundaryKind kind, int size) { return Spectrum1D(kind, size); }

Eigen::MatrixXd laplacian_matrix(BoundaryKind kind, int size) {
    if (size < 1) throw std::invalid_argument("laplacian_matrix: size must be >= 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    // Assemble row by row from the stencil 2 f(x) - f(x+1) - f(x-1), applying
    // the boundary rule to the out-of-range neighbors.  Wrapped neighbors that
    // land on x itself cancel against the diagonal (degenerate sizes).
    auto couple = [&](int row, int neighbor) {
        // neighbor is a raw coordinate in [0, size+1]
        switch (kind) {
            case BoundaryKind::Periodic:
                neighbor = (neighbor - 1 + size) % size + 1;
                break;
            case BoundaryKind::Free:
                if (neighbor == 0) neighbor = 1;
                if (neighbor == size + 1) neighbor = size;
                break;
            case BoundaryKind::DirichletDirichlet:
                if (neighbor == 0 || neighbor == size + 1) return;  // pinned to zero
                break;
            case BoundaryKind::DirichletNeumann:
                if (neighbor == 0) return;
                if (neighbor == size + 1) neighbor = size;
                break;
        }
        m(row - 1, neighbor - 1) -= 1.0;
    };
    for (int x = 1; x <= size; ++x) {
        m(x - 1, x - 1) += 2.0;
        couple(x, x + 1);
        couple(x, x - 1);
    }
    return m;
}

}  // namespace latres::spectra
