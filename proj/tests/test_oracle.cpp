#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latres/lattice.hpp"
#include "latres/oracle.hpp"

using namespace latres::lattice;
using namespace latres::oracle;

namespace {

ResistorNetwork unit_cycle(int n) {
    ResistorNetwork net(n);
    for (int i = 0; i < n; ++i) net.add_conductance(i, (i + 1) % n, 1.0);
    return net;
}

ResistorNetwork unit_path(int n) {
    ResistorNetwork net(n);
    for (int i = 0; i + 1 < n; ++i) net.add_conductance(i, i + 1, 1.0);
    return net;
}

// Largest violation of the Kirchhoff balance at the non-grounded nodes.
double kirchhoff_residual(const ResistorNetwork& net, const PotentialSolution& sol) {
    double worst = 0.0;
    for (int i = 0; i < net.node_count(); ++i) {
        if (i == sol.grounded) continue;
        double flow = 0.0;
        for (int j = 0; j < net.node_count(); ++j)
            flow += net.conductance(i, j) * (sol.potentials[i] - sol.potentials[j]);
        worst = std::max(worst, std::abs(flow - sol.injected[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("triangle potentials: 1 ohm parallel with 2 ohm") {
    const ResistorNetwork net = unit_cycle(3);
    const PotentialSolution sol = solve_potentials(net, {1.0, -1.0, 0.0}, 2);
    CHECK(sol.potentials[0] - sol.potentials[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sol.potentials[2] == 0.0);
    CHECK(kirchhoff_residual(net, sol) < 1e-9);
}

TEST_CASE("zero injections give zero potentials") {
    const ResistorNetwork net = unit_cycle(4);
    const PotentialSolution sol = solve_potentials(net, {0.0, 0.0, 0.0, 0.0}, 0);
    for (double v : sol.potentials) CHECK(v == 0.0);
}

TEST_CASE("globe M=1 N=3 pole to pole") {
    const ResistorNetwork net = build_network({Topology::Globe, 1, 3, 1.0, 1.0});
    std::vector<double> inj(5, 0.0);
    inj[0] = 1.0;
    inj[4] = -1.0;
    const PotentialSolution sol = solve_potentials(net, inj, 4);
    CHECK(sol.potentials[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(kirchhoff_residual(net, sol) < 1e-9);
}

TEST_CASE("solve_potentials input validation") {
    const ResistorNetwork net = unit_cycle(3);
    CHECK_THROWS_AS(solve_potentials(net, {1.0, 0.0, 0.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_potentials(net, {1.0, -1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_potentials(net, {1.0, -1.0, 0.0}, 3), std::invalid_argument);
}

TEST_CASE("disconnected networks are reported on every route") {
    ResistorNetwork net(4);
    net.add_conductance(0, 1, 1.0);
    net.add_conductance(2, 3, 1.0);
    CHECK_THROWS_AS(resistance_direct(net, 0, 2), DisconnectedNetwork);
    CHECK_THROWS_AS(resistance_spectral_full(net, 0, 2), DisconnectedNetwork);
    CHECK_THROWS_AS(kirchhoff_index(net), DisconnectedNetwork);
}

TEST_CASE("resistance_direct basics") {
    const ResistorNetwork cycle = unit_cycle(3);
    CHECK(resistance_direct(cycle, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(resistance_direct(cycle, 1, 1) == 0.0);
    // Frozen against an independent dense pseudo-inverse computation.
    const ResistorNetwork globe = build_network({Topology::Globe, 3, 4, 1.0, 1.0});
    const LatticeSpec spec{Topology::Globe, 3, 4, 1.0, 1.0};
    const int a = node_index(spec, NodeRef::grid(1, 1));
    const int b = node_index(spec, NodeRef::grid(3, 2));
    CHECK(resistance_direct(globe, a, b) == doctest::Approx(0.670518207283).epsilon(1e-11));
}

TEST_CASE("spectral route agrees with the direct route") {
    const ResistorNetwork path = unit_path(3);
    CHECK(resistance_spectral_full(path, 0, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(resistance_spectral_full(path, 1, 1) == 0.0);
    CHECK(resistance_spectral_full(unit_cycle(3), 0, 1) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    for (const LatticeSpec spec : {LatticeSpec{Topology::Globe, 5, 6, 2.0, 3.0},
                                   LatticeSpec{Topology::Torus, 6, 6, 1.0, 1.0},
                                   LatticeSpec{Topology::Fan, 4, 5, 2.0, 3.0},
                                   LatticeSpec{Topology::FreeRect, 10, 10, 1.0, 2.0},
                                   LatticeSpec{Topology::Globe, 11, 18, 2.0, 3.0}}) {
        const ResistorNetwork net = build_network(spec);
        const int t = net.node_count();  // up to 200 nodes
        const int stride = t > 100 ? 23 : 5;
        for (int a = 0; a < t; a += 3)
            for (int b = a + 1; b < t; b += stride) {
                const double direct = resistance_direct(net, a, b);
                const double spectral = resistance_spectral_full(net, a, b);
                CHECK(std::abs(direct - spectral) <= 1e-9 * std::abs(direct));
            }
    }
}

TEST_CASE("resistance_matrix equals per-pair direct solves") {
    const ResistorNetwork net = build_network({Topology::Globe, 3, 4, 2.0, 3.0});
    const Eigen::MatrixXd rm = resistance_matrix(net);
    for (int a = 0; a < net.node_count(); ++a)
        for (int b = 0; b < net.node_count(); ++b) {
            const double want = resistance_direct(net, a, b);
            CHECK(std::abs(rm(a, b) - want) <= 1e-10 * std::max(1.0, want));
        }
}

TEST_CASE("kirchhoff index") {
    ResistorNetwork single(2);
    single.add_conductance(0, 1, 1.0);
    CHECK(kirchhoff_index(single) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kirchhoff_index(unit_cycle(3)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(kirchhoff_index(unit_path(3)) == doctest::Approx(4.0).epsilon(1e-12));

    for (const LatticeSpec spec : {LatticeSpec{Topology::Globe, 4, 5, 2.0, 3.0},
                                   LatticeSpec{Topology::Cylinder, 5, 6, 1.0, 1.0},
                                   LatticeSpec{Topology::Cobweb, 5, 5, 1.0, 2.0}}) {
        const ResistorNetwork net = build_network(spec);
        const double spectral = kirchhoff_index(net);
        const double pairwise = kirchhoff_index_pairwise(net);
        CHECK(std::abs(spectral - pairwise) <= 1e-8 * spectral);
    }
}

TEST_CASE("resistance distance is a metric") {
    const ResistorNetwork net = build_network({Topology::Globe, 3, 4, 2.0, 3.0});
    const int t = net.node_count();
    const Eigen::MatrixXd rm = resistance_matrix(net);
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b) {
            CHECK(std::abs(rm(a, b) - rm(b, a)) < 1e-12);
            for (int c = 0; c < t; ++c)
                CHECK(rm(a, c) <= rm(a, b) + rm(b, c) + 1e-12);
        }
    // Symmetry of the one-shot route as well.
    CHECK(std::abs(resistance_direct(net, 2, 9) - resistance_direct(net, 9, 2)) < 1e-12);
}
