#include "latres/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace latres::lattice {

const char* to_string(Topology t) {
    switch (t) {
        case Topology::FreeRect: return "free";
        case Topology::Cylinder: return "cylinder";
        case Topology::Torus: return "torus";
        case Topology::Cobweb: return "cobweb";
        case Topology::Fan: return "fan";
        case Topology::Globe: return "globe";
    }
    return "?";
}

bool has_pole_south(Topology t) {
    return t == Topology::Cobweb || t == Topology::Fan || t == Topology::Globe;
}

bool has_pole_north(Topology t) { return t == Topology::Globe; }

int LatticeSpec::node_count() const {
    int extra = (has_pole_south(topology) ? 1 : 0) + (has_pole_north(topology) ? 1 : 0);
    return M * N + extra;
}

void LatticeSpec::validate() const {
    if (M < 1 || N < 1) throw std::invalid_argument("LatticeSpec: M and N must be >= 1");
    if (!(r > 0.0) || !std::isfinite(r) || !(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("LatticeSpec: r and s must be positive and finite");
}

int node_index(const LatticeSpec& spec, const NodeRef& ref) {
    spec.validate();
    switch (ref.kind) {
        case NodeRef::Kind::PoleSouth:
            if (!has_pole_south(spec.topology))
                throw std::invalid_argument("node_index: topology has no pole O");
            return 0;
        case NodeRef::Kind::PoleNorth:
            if (!has_pole_north(spec.topology))
                throw std::invalid_argument("node_index: topology has no pole O'");
            return spec.M * spec.N + 1;
        case NodeRef::Kind::Grid:
            if (ref.x < 1 || ref.x > spec.N || ref.y < 1 || ref.y > spec.M)
                throw std::invalid_argument("node_index: grid coordinate out of range");
            return (ref.y - 1) * spec.N + ref.x - (has_pole_south(spec.topology) ? 0 : 1);
    }
    throw std::invalid_argument("node_index: bad NodeRef");
}

NodeRef node_ref(const LatticeSpec& spec, int index) {
    if (index < 0 || index >= spec.node_count())
        throw std::invalid_argument("node_ref: index out of range");
    if (has_pole_south(spec.topology)) {
        if (index == 0) return NodeRef::pole_south();
        if (has_pole_north(spec.topology) && index == spec.M * spec.N + 1)
            return NodeRef::pole_north();
        --index;
    }
    return NodeRef::grid(index % spec.N + 1, index / spec.N + 1);
}

ResistorNetwork::ResistorNetwork(int node_count) : node_count_(node_count) {
    if (node_count < 1) throw std::invalid_argument("ResistorNetwork: empty node set");
    totals_.assign(static_cast<std::size_t>(node_count), 0.0);
}

void ResistorNetwork::add_conductance(int i, int j, double siemens) {
    if (i < 0 || i >= node_count_ || j < 0 || j >= node_count_)
        throw std::invalid_argument("ResistorNetwork: node id out of range");
    if (!(siemens >= 0.0) || !std::isfinite(siemens))
        throw std::invalid_argument("ResistorNetwork: conductance must be finite and >= 0");
    if (i == j || siemens == 0.0) return;  // self loops carry no current
    if (i > j) std::swap(i, j);
    bonds_[{i, j}] += siemens;
    totals_[i] += siemens;
    totals_[j] += siemens;
}

double ResistorNetwork::conductance(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    auto it = bonds_.find({i, j});
    return it == bonds_.end() ? 0.0 : it->second;
}

ResistorNetwork build_network(const LatticeSpec& spec) {
    spec.validate();
    const int M = spec.M, N = spec.N;
    const double cx = 1.0 / spec.r;  // ring / x-direction bonds
    const double cy = 1.0 / spec.s;  // longitudinal bonds and spokes
    ResistorNetwork net(spec.node_count());

    auto gid = [&](int x, int y) { return node_index(spec, NodeRef::grid(x, y)); };
    const bool x_periodic = spec.topology == Topology::Torus ||
                            spec.topology == Topology::Cobweb ||
                            spec.topology == Topology::Globe;
    const bool y_periodic = spec.topology == Topology::Cylinder ||
                            spec.topology == Topology::Torus;

    for (int y = 1; y <= M; ++y) {
        for (int x = 1; x <= N; ++x) {
            if (x_periodic) {
                net.add_conductance(gid(x, y), gid(x % N + 1, y), cx);
            } else if (x < N) {
                net.add_conductance(gid(x, y), gid(x + 1, y), cx);
            }
            if (y_periodic) {
                net.add_conductance(gid(x, y), gid(x, y % M + 1), cy);
            } else if (y < M) {
                net.add_conductance(gid(x, y), gid(x, y + 1), cy);
            }
        }
    }
    if (has_pole_south(spec.topology)) {
        const int pole = node_index(spec, NodeRef::pole_south());
        for (int x = 1; x <= N; ++x) net.add_conductance(pole, gid(x, 1), cy);
    }
    if (has_pole_north(spec.topology)) {
        const int pole = node_index(spec, NodeRef::pole_north());
        for (int x = 1; x <= N; ++x) net.add_conductance(pole, gid(x, M), cy);
    }
    return net;
}

void write_edge_list(std::ostream& out, const ResistorNetwork& network) {
    out << "T=" << network.node_count() << "\n";
    char buf[48];
    for (const auto& [ij, c] : network.bonds()) {
        std::snprintf(buf, sizeof buf, "%.15g", c);
        out << ij.first << " " << ij.second << " " << buf << "\n";
    }
}

ResistorNetwork read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("T=", 0) != 0)
        throw std::invalid_argument("edge list: missing T=<node_count> header");
    int t = 0;
    try {
        t = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("edge list: bad node count");
    }
    ResistorNetwork net(t);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        double c = 0.0;
        if (!(ls >> i >> j >> c))
            throw std::invalid_argument("edge list: malformed bond line: " + line);
        net.add_conductance(i, j, c);
    }
    return net;
}

}  // namespace latres::lattice
