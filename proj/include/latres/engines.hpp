#pragma once

#include <complex>
#include <vector>

#include "latres/lattice.hpp"
#include "latres/oracle.hpp"
#include "latres/spectra1d.hpp"

// Closed-form two-point resistance engines.
//
// The method ladder, cheapest applicable first:
//   * regular lattices (free/cylinder/torus): double sum over the non-zero
//     modes of the full 2D Laplacian, which splits as a Kronecker sum of two
//     1D chain Laplacians;
//   * cobweb/fan: double sum over the first minor of the Laplacian (the hub
//     row/column deleted), periodic(x) x DN(y) resp. free(x) x DN(y);
//   * globe: double sum over the second minor (both pole rows/columns
//     deleted), periodic(x) x DD(y), plus a correction term from eliminating
//     the retained pole's potential -- and a single-sum fast path obtained by
//     collapsing the longitudinal modes into hyperbolic ratios.
//
// Every engine is validated against the dense Kirchhoff oracle.

namespace latres::engines {

enum class Method { WuDoubleSum, FirstMinor, GlobeDoubleSum, GlobeSingleSum, Oracle };

const char* to_string(Method m);

// Kronecker-sum spectrum weight_x * Lx (size N, sites x) + weight_y * Ly
// (size M, sites y): eigenvalues are all pairwise sums, eigenvectors all
// pairwise products of the factor modes.
class ProductSpectrum {
public:
    ProductSpectrum(spectra::Spectrum1D x_factor, double weight_x,
                    spectra::Spectrum1D y_factor, double weight_y);

    int modes_x() const { return x_.size(); }  // N
    int modes_y() const { return y_.size(); }  // M

    double eigenvalue(int m, int n) const {
        return wx_ * x_.eigenvalues()[n] + wy_ * y_.eigenvalues()[m];
    }
    std::complex<double> eigenvector(int m, int n, int x, int y) const {
        return x_.eigenvector(n, x) * y_.eigenvector(m, y);
    }

    const spectra::Spectrum1D& x_factor() const { return x_; }
    const spectra::Spectrum1D& y_factor() const { return y_; }
    double weight_x() const { return wx_; }
    double weight_y() const { return wy_; }

private:
    spectra::Spectrum1D x_;
    spectra::Spectrum1D y_;
    double wx_;
    double wy_;
};

// Factor spectra of the full 2D Laplacian (free/cylinder/torus only).
ProductSpectrum full_laplacian_spectrum(const lattice::LatticeSpec& spec);
// First minor, hub row/column deleted (cobweb/fan only).
ProductSpectrum first_minor_spectrum(const lattice::LatticeSpec& spec);
// Second minor, both pole rows/columns deleted (globe only).
ProductSpectrum second_minor_spectrum(const lattice::LatticeSpec& spec);

struct ResistanceResult {
    double ohms = 0.0;
    Method method = Method::Oracle;
    lattice::LatticeSpec spec;
    lattice::NodeRef from;
    lattice::NodeRef to;
};

// Per-latitudinal-mode hyperbolic data for the globe single-sum path:
// sinh(lambda[m]) = sqrt(r/s) * sin(phi[m]).  The u-factors are the decaying
// exponentials the sum is evaluated through; integer powers of u2 replace
// every sinh/cosh in the hot loop, so nothing can overflow.
struct GlobeModeData {
    int M = 0;
    int N = 0;
    double h = 1.0;
    std::vector<double> phi;        // phi_m
    std::vector<double> lambda;     // asinh(sqrt(h) sin phi_m), > 0
    std::vector<double> sinh2;      // sinh(2 lambda_m)
    std::vector<double> coth_n;     // coth(N lambda_m)
    std::vector<double> u2;         // exp(-2 lambda_m)
    std::vector<double> f2;         // 1 - exp(-4 lambda_m)
    std::vector<double> f2n;        // 1 - exp(-2 N lambda_m)
};

GlobeModeData globe_mode_data(const lattice::LatticeSpec& spec);

// Wu double sum over the full-Laplacian modes; the exact zero mode (0,0) is
// excluded by index.  Grid endpoints only.
ResistanceResult resistance_regular(const lattice::LatticeSpec& spec,
                                    lattice::NodeRef a, lattice::NodeRef b);

// First-minor double sum for cobweb/fan; endpoints may include the hub, whose
// eigenvector entries vanish (it is the deleted node).
ResistanceResult resistance_first_minor(const lattice::LatticeSpec& spec,
                                        lattice::NodeRef a, lattice::NodeRef b);

// Globe, double-sum reference path over the second-minor modes plus the
// pole-elimination correction s*(y2-y1)^2/(N(M+1)).  Pole endpoints dispatch
// to resistance_globe_pole.
ResistanceResult resistance_globe(const lattice::LatticeSpec& spec,
                                  lattice::NodeRef a, lattice::NodeRef b);

// Globe, single-sum fast path; dispatches to the same-column / same-row
// specializations when they apply.  Pole endpoints dispatch to
// resistance_globe_pole.
ResistanceResult resistance_globe_fast(const lattice::LatticeSpec& spec,
                                       lattice::NodeRef a, lattice::NodeRef b);

// Globe with at least one pole endpoint.  O-O' is the closed form s(M+1)/N;
// pole-grid pairs are a single sum over the latitudinal modes.
ResistanceResult resistance_globe_pole(const lattice::LatticeSpec& spec,
                                       lattice::NodeRef a, lattice::NodeRef b);

// Raw single-sum evaluations (the fast path's building blocks, exposed so the
// specializations can be compared against the general form).
double globe_single_sum(const GlobeModeData& d, double s,
                        int x1, int y1, int x2, int y2);       // general
double globe_single_sum_column(const GlobeModeData& d, double s,
                               int y1, int y2);                // x1 == x2
double globe_single_sum_row(const GlobeModeData& d, double s,
                            int x1, int x2, int y);            // y1 == y2

// Node potentials on the globe from the second-minor solve, with the north
// pole grounded (V = 0 there).  `current` amperes enter at a and leave at b.
oracle::PotentialSolution potentials_second_minor(const lattice::LatticeSpec& spec,
                                                  lattice::NodeRef a, lattice::NodeRef b,
                                                  double current);

// Cheapest closed-form engine for the topology (globe -> single sum).
ResistanceResult resistance(const lattice::LatticeSpec& spec,
                            lattice::NodeRef a, lattice::NodeRef b);

// Double-sum variant where one exists (globe); elsewhere the same engine as
// resistance().
ResistanceResult resistance_double_sum(const lattice::LatticeSpec& spec,
                                       lattice::NodeRef a, lattice::NodeRef b);

}  // namespace latres::engines
