#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "latres/lattice.hpp"

namespace latres::oracle {

// Thrown when a solve or spectrum shows the network is not connected.
class DisconnectedNetwork : public std::runtime_error {
public:
    explicit DisconnectedNetwork(const std::string& what) : std::runtime_error(what) {}
};

// Node potentials for a given injection pattern, with one node grounded.
struct PotentialSolution {
    std::vector<double> potentials;  // volts; potentials[grounded] == 0
    std::vector<double> injected;    // amperes; sums to zero
    int grounded = 0;
};

// Dense Laplacian of the explicit network (node totals on the diagonal,
// -c_{i,j} off it).  The only place the graph is materialized densely.
Eigen::MatrixXd dense_laplacian(const lattice::ResistorNetwork& network);

// Direct solution of the Kirchhoff system: the grounded node's row and column
// are deleted, the remaining symmetric positive-definite system is factored
// and solved, and 0 is re-inserted at the grounded node.
PotentialSolution solve_potentials(const lattice::ResistorNetwork& network,
                                   std::vector<double> injections, int grounded);

// (V_a - V_b) per unit current injected at a and extracted at b, grounding b.
double resistance_direct(const lattice::ResistorNetwork& network, int a, int b);

// All-pairs resistances by the same direct route, factoring once and solving
// one right-hand side per node.  R(i,j) at (i,j).
Eigen::MatrixXd resistance_matrix(const lattice::ResistorNetwork& network);

// Full-spectrum route: R = sum over nonzero Laplacian modes of
// |psi_{i,a} - psi_{i,b}|^2 / lambda_i.  Independent of the direct route.
double resistance_spectral_full(const lattice::ResistorNetwork& network, int a, int b);

// Sum of resistance distances over all unordered pairs, as T * sum(1/lambda)
// over the nonzero Laplacian spectrum.
double kirchhoff_index(const lattice::ResistorNetwork& network);

// Same quantity by explicit pairwise summation (cross-check route).
double kirchhoff_index_pairwise(const lattice::ResistorNetwork& network);

}  // namespace latres::oracle
