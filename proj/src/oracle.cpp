#include "latres/oracle.hpp"

#include <cmath>

namespace latres::oracle {

namespace {

// Relative tolerance separating the connected component's zero mode from the
// genuine spectrum.
constexpr double kZeroModeTol = 1e-9;

// In-place lower Cholesky of a symmetric positive-definite matrix.  Kept by
// hand so the direct route shares nothing with the eigensolver route it is
// cross-checked against.
void cholesky(Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    const double floor = 1e-12 * std::max(1.0, a.diagonal().maxCoeff());
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > floor))
            throw DisconnectedNetwork("singular reduced Kirchhoff system; network disconnected?");
        d = std::sqrt(d);
        a(j, j) = d;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
            a(i, j) = v / d;
        }
    }
}

void cholesky_solve(const Eigen::MatrixXd& l, Eigen::VectorXd& b) {
    const Eigen::Index n = l.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        double v = b(i);
        for (Eigen::Index k = 0; k < i; ++k) v -= l(i, k) * b(k);
        b(i) = v / l(i, i);
    }
    for (Eigen::Index i = n; i-- > 0;) {
        double v = b(i);
        for (Eigen::Index k = i + 1; k < n; ++k) v -= l(k, i) * b(k);
        b(i) = v / l(i, i);
    }
}

// Laplacian with the grounded node's row/column removed.
Eigen::MatrixXd reduced_laplacian(const lattice::ResistorNetwork& net, int grounded) {
    const int t = net.node_count();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t - 1, t - 1);
    auto pos = [&](int i) { return i < grounded ? i : i - 1; };
    for (int i = 0; i < t; ++i)
        if (i != grounded) m(pos(i), pos(i)) = net.node_total(i);
    for (const auto& [ij, c] : net.bonds()) {
        const auto [i, j] = ij;
        if (i == grounded || j == grounded) continue;
        m(pos(i), pos(j)) -= c;
        m(pos(j), pos(i)) -= c;
    }
    return m;
}

struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    int zero_modes = 0;
};

EigenSystem laplacian_spectrum(const lattice::ResistorNetwork& net) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_laplacian(net));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("oracle: eigendecomposition failed");
    EigenSystem sys{solver.eigenvalues(), solver.eigenvectors(), 0};
    const double cutoff = kZeroModeTol * std::max(1.0, sys.values.maxCoeff());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i)
        if (sys.values(i) < cutoff) ++sys.zero_modes;
    if (sys.zero_modes != 1)
        throw DisconnectedNetwork("Laplacian has " + std::to_string(sys.zero_modes) +
                                  " zero modes; network disconnected?");
    return sys;
}

}  // namespace

Eigen::MatrixXd dense_laplacian(const lattice::ResistorNetwork& net) {
    const int t = net.node_count();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t, t);
    for (int i = 0; i < t; ++i) m(i, i) = net.node_total(i);
    for (const auto& [ij, c] : net.bonds()) {
        m(ij.first, ij.second) -= c;
        m(ij.second, ij.first) -= c;
    }
    return m;
}

PotentialSolution solve_potentials(const lattice::ResistorNetwork& net,
                                   std::vector<double> injections, int grounded) {
    const int t = net.node_count();
    if (static_cast<int>(injections.size()) != t)
        throw std::invalid_argument("solve_potentials: injection vector size mismatch");
    if (grounded < 0 || grounded >= t)
        throw std::invalid_argument("solve_potentials: grounded node out of range");
    double total = 0.0, scale = 0.0;
    for (double v : injections) {
        total += v;
        scale += std::abs(v);
    }
    if (std::abs(total) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("solve_potentials: injections must sum to zero");

    PotentialSolution sol;
    sol.injected = std::move(injections);
    sol.grounded = grounded;
    sol.potentials.assign(static_cast<std::size_t>(t), 0.0);
    if (t == 1) return sol;

    Eigen::MatrixXd m = reduced_laplacian(net, grounded);
    cholesky(m);
    Eigen::VectorXd rhs(t - 1);
    for (int i = 0, k = 0; i < t; ++i)
        if (i != grounded) rhs(k++) = sol.injected[i];
    cholesky_solve(m, rhs);
    for (int i = 0, k = 0; i < t; ++i)
        if (i != grounded) sol.potentials[i] = rhs(k++);
    return sol;
}

double resistance_direct(const lattice::ResistorNetwork& net, int a, int b) {
    const int t = net.node_count();
    if (a < 0 || a >= t || b < 0 || b >= t)
        throw std::invalid_argument("resistance_direct: node id out of range");
    if (a == b) return 0.0;
    std::vector<double> inj(static_cast<std::size_t>(t), 0.0);
    inj[a] = 1.0;
    inj[b] = -1.0;
    PotentialSolution sol = solve_potentials(net, std::move(inj), b);
    return sol.potentials[a];
}

Eigen::MatrixXd resistance_matrix(const lattice::ResistorNetwork& net) {
    const int t = net.node_count();
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(t, t);
    if (t == 1) return r;
    const int grounded = t - 1;
    Eigen::MatrixXd l = reduced_laplacian(net, grounded);
    cholesky(l);
    // Columns of the reduced inverse, one solve per node.
    Eigen::MatrixXd inv(t - 1, t - 1);
    for (int j = 0; j < t - 1; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(t - 1);
        e(j) = 1.0;
        cholesky_solve(l, e);
        inv.col(j) = e;
    }
    for (int i = 0; i < t - 1; ++i) {
        r(i, grounded) = r(grounded, i) = inv(i, i);
        for (int j = i + 1; j < t - 1; ++j)
            r(i, j) = r(j, i) = inv(i, i) + inv(j, j) - 2.0 * inv(i, j);
    }
    return r;
}

double resistance_spectral_full(const lattice::ResistorNetwork& net, int a, int b) {
    const int t = net.node_count();
    if (a < 0 || a >= t || b < 0 || b >= t)
        throw std::invalid_argument("resistance_spectral_full: node id out of range");
    if (a == b) return 0.0;
    EigenSystem sys = laplacian_spectrum(net);
    const double cutoff = kZeroModeTol * std::max(1.0, sys.values.maxCoeff());
    double r = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        if (sys.values(i) < cutoff) continue;
        const double d = sys.vectors(a, i) - sys.vectors(b, i);
        r += d * d / sys.values(i);
    }
    return r;
}

double kirchhoff_index(const lattice::ResistorNetwork& net) {
    EigenSystem sys = laplacian_spectrum(net);
    const double cutoff = kZeroModeTol * std::max(1.0, sys.values.maxCoeff());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i)
        if (sys.values(i) >= cutoff) sum += 1.0 / sys.values(i);
    return net.node_count() * sum;
}

double kirchhoff_index_pairwise(const lattice::ResistorNetwork& net) {
    const Eigen::MatrixXd r = resistance_matrix(net);
    double sum = 0.0;
    for (int i = 0; i < net.node_count(); ++i)
        for (int j = i + 1; j < net.node_count(); ++j) sum += r(i, j);
    return sum;
}

}  // namespace latres::oracle
