#pragma once

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

namespace latres::lattice {

enum class Topology { FreeRect, Cylinder, Torus, Cobweb, Fan, Globe };

const char* to_string(Topology t);

// Hub node O on cobweb/fan, south pole O on the globe.
bool has_pole_south(Topology t);
// North pole O' (globe only).
bool has_pole_north(Topology t);

// Topology + dimensions + directional resistances; the single source of truth
// for every engine and for the explicit network builder.
//
// x runs 1..N around the first (longitudinal; periodic where applicable)
// direction with per-bond resistance r; y runs 1..M across the second
// direction with per-bond resistance s.  Pole/hub spokes are s-bonds.
struct LatticeSpec {
    Topology topology = Topology::Globe;
    int M = 1;
    int N = 1;
    double r = 1.0;  // ohms, x-direction bonds
    double s = 1.0;  // ohms, y-direction bonds and spokes

    double h() const { return r / s; }
    int node_count() const;
    void validate() const;  // throws std::invalid_argument
};

// Symbolic node address: pole O, pole O', or grid coordinate.
struct NodeRef {
    enum class Kind { PoleSouth, PoleNorth, Grid };
    Kind kind = Kind::Grid;
    int x = 0;
    int y = 0;

    static NodeRef pole_south() { return {Kind::PoleSouth, 0, 0}; }
    static NodeRef pole_north() { return {Kind::PoleNorth, 0, 0}; }
    static NodeRef grid(int x, int y) { return {Kind::Grid, x, y}; }

    bool operator==(const NodeRef&) const = default;
};

// Flat node id.  Topologies with a hub/south pole put it at 0 and grid node
// (x, y) at (y-1)*N + x, the north pole (globe) at M*N+1.  Pole-less
// topologies use the same row-major order shifted to a 0-based range,
// (y-1)*N + x - 1, so that ids stay contiguous in [0, node_count).
int node_index(const LatticeSpec& spec, const NodeRef& ref);

// Inverse of node_index.
NodeRef node_ref(const LatticeSpec& spec, int index);

// Explicit weighted graph: aggregated symmetric conductance table with zero
// diagonal.  Parallel bonds sum; self loops are dropped.
class ResistorNetwork {
public:
    explicit ResistorNetwork(int node_count);

    void add_conductance(int i, int j, double siemens);

    int node_count() const { return node_count_; }
    // c_i, the node's total conductance.
    double node_total(int i) const { return totals_[i]; }
    // c_{i,j}; zero when no bond exists.
    double conductance(int i, int j) const;
    // Sorted (i < j) aggregated bond table.
    const std::map<std::pair<int, int>, double>& bonds() const { return bonds_; }

private:
    int node_count_;
    std::map<std::pair<int, int>, double> bonds_;
    std::vector<double> totals_;
};

ResistorNetwork build_network(const LatticeSpec& spec);

// Edge-list text format: header "T=<node_count>", then one "i j conductance"
// line per bond in ascending (i, j) order.
void write_edge_list(std::ostream& out, const ResistorNetwork& network);
ResistorNetwork read_edge_list(std::istream& in);

}  // namespace latres::lattice
