// latres: exact two-point resistance on structured resistor networks.
//
// Subcommands:
//   resist     one pair, any engine (or all engines cross-checked)
//   table      all-pairs CSV
//   verify     closed-form engines vs the Kirchhoff oracle over all pairs
//   spectrum   1D chain-Laplacian eigen-system dump
//   kirchhoff  Kirchhoff index (sum of resistance distances)
//   export     edge-list dump of the explicit network
//
// Exit codes: 0 success, 1 engine disagreement beyond tolerance,
// 2 parse/validation failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "latres/engines.hpp"
#include "latres/lattice.hpp"
#include "latres/oracle.hpp"
#include "latres/parallel.hpp"
#include "latres/spectra1d.hpp"

namespace {

using latres::engines::Method;
using latres::engines::ResistanceResult;
using latres::lattice::LatticeSpec;
using latres::lattice::NodeRef;
using latres::lattice::ResistorNetwork;
using latres::lattice::Topology;
using latres::spectra::BoundaryKind;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Flat JSON object with insertion-ordered keys and %.12g numbers, so output
// is byte-stable across runs.
class JsonObject {
public:
    JsonObject& str(const std::string& key, const std::string& value) {
        return raw(key, "\"" + json_escape(value) + "\"");
    }
    JsonObject& num(const std::string& key, double value) { return raw(key, fmt12(value)); }
    JsonObject& integer(const std::string& key, long long value) {
        return raw(key, std::to_string(value));
    }
    JsonObject& boolean(const std::string& key, bool value) {
        return raw(key, value ? "true" : "false");
    }
    JsonObject& raw(const std::string& key, const std::string& value) {
        if (!first_) body_ += ",";
        first_ = false;
        body_ += "\"" + json_escape(key) + "\":" + value;
        return *this;
    }
    std::string dump() const { return "{" + body_ + "}"; }

private:
    std::string body_;
    bool first_ = true;
};

const std::map<std::string, Topology>& topology_names() {
    static const std::map<std::string, Topology> m = {
        {"free", Topology::FreeRect},   {"cylinder", Topology::Cylinder},
        {"torus", Topology::Torus},     {"cobweb", Topology::Cobweb},
        {"fan", Topology::Fan},         {"globe", Topology::Globe},
    };
    return m;
}

const std::map<std::string, BoundaryKind>& bc_names() {
    static const std::map<std::string, BoundaryKind> m = {
        {"periodic", BoundaryKind::Periodic},
        {"free", BoundaryKind::Free},
        {"dd", BoundaryKind::DirichletDirichlet},
        {"dn", BoundaryKind::DirichletNeumann},
    };
    return m;
}

NodeRef parse_endpoint(const std::string& text) {
    if (text == "O") return NodeRef::pole_south();
    if (text == "O'") return NodeRef::pole_north();
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("endpoint must be O, O' or x,y: " + text);
    std::size_t used = 0;
    int x = 0, y = 0;
    try {
        x = std::stoi(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("");
        const std::string ys = text.substr(comma + 1);
        y = std::stoi(ys, &used);
        if (used != ys.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("endpoint must be O, O' or x,y: " + text);
    }
    return NodeRef::grid(x, y);
}

std::string node_label(const NodeRef& ref) {
    switch (ref.kind) {
        case NodeRef::Kind::PoleSouth: return "O";
        case NodeRef::Kind::PoleNorth: return "O'";
        case NodeRef::Kind::Grid:
            return std::to_string(ref.x) + "," + std::to_string(ref.y);
    }
    return "?";
}

// CSV cell pair for one endpoint; poles use the label column and an empty
// coordinate column.
std::pair<std::string, std::string> csv_fields(const NodeRef& ref) {
    switch (ref.kind) {
        case NodeRef::Kind::PoleSouth: return {"O", ""};
        case NodeRef::Kind::PoleNorth: return {"O'", ""};
        case NodeRef::Kind::Grid:
            return {std::to_string(ref.x), std::to_string(ref.y)};
    }
    return {"?", ""};
}

std::size_t sweep_threads() {
    const char* env = std::getenv("LATRES_THREADS");
    if (env == nullptr || *env == '\0') return std::thread::hardware_concurrency();
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw std::invalid_argument("LATRES_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
}

struct LatticeOptions {
    std::string topology = "globe";
    int M = 1;
    int N = 1;
    double r = 1.0;
    double s = 1.0;

    LatticeSpec spec() const {
        LatticeSpec sp;
        sp.topology = topology_names().at(topology);
        sp.M = M;
        sp.N = N;
        sp.r = r;
        sp.s = s;
        sp.validate();
        return sp;
    }
};

void add_lattice_options(CLI::App* cmd, LatticeOptions* opt) {
    cmd->add_option("--topology", opt->topology, "free|cylinder|torus|cobweb|fan|globe")
        ->check(CLI::IsMember({"free", "cylinder", "torus", "cobweb", "fan", "globe"}));
    cmd->add_option("-M", opt->M, "latitudinal rows (y = 1..M)");
    cmd->add_option("-N", opt->N, "longitudinal columns (x = 1..N)");
    cmd->add_option("-r", opt->r, "x-direction bond resistance, ohms");
    cmd->add_option("-s", opt->s, "y-direction bond / spoke resistance, ohms");
}

double engine_value(const LatticeSpec& spec, const NodeRef& a, const NodeRef& b,
                    const std::string& method, const ResistorNetwork& net) {
    if (method == "fast") return latres::engines::resistance(spec, a, b).ohms;
    if (method == "double") return latres::engines::resistance_double_sum(spec, a, b).ohms;
    return latres::oracle::resistance_direct(net, latres::lattice::node_index(spec, a),
                                             latres::lattice::node_index(spec, b));
}

// ---------------------------------------------------------------- resist --

struct ResistOptions {
    LatticeOptions lat;
    std::string from, to;
    std::string method = "fast";
    std::string format = "human";
    double tolerance = 1e-9;
    std::string input;  // edge-list file; endpoints become raw node ids
};

int run_resist(const ResistOptions& opt) {
    if (!opt.input.empty()) {
        std::ifstream in(opt.input);
        if (!in) throw std::invalid_argument("cannot open " + opt.input);
        const ResistorNetwork net = latres::lattice::read_edge_list(in);
        const int a = std::stoi(opt.from);
        const int b = std::stoi(opt.to);
        const double r = latres::oracle::resistance_direct(net, a, b);
        if (opt.format == "json") {
            std::cout << JsonObject{}
                             .str("input", opt.input)
                             .str("from", opt.from)
                             .str("to", opt.to)
                             .str("method", "oracle")
                             .num("R_ohms", r)
                             .dump()
                      << "\n";
        } else {
            std::cout << "R = " << fmt12(r) << " ohm (oracle)\n";
        }
        return 0;
    }

    const LatticeSpec spec = opt.lat.spec();
    const NodeRef a = parse_endpoint(opt.from);
    const NodeRef b = parse_endpoint(opt.to);
    latres::lattice::node_index(spec, a);  // validate against the topology
    latres::lattice::node_index(spec, b);

    std::vector<std::pair<std::string, double>> values;
    if (opt.method == "all") {
        const ResistorNetwork net = latres::lattice::build_network(spec);
        values.emplace_back("fast", engine_value(spec, a, b, "fast", net));
        values.emplace_back("double", engine_value(spec, a, b, "double", net));
        values.emplace_back("oracle", engine_value(spec, a, b, "oracle", net));
    } else if (opt.method == "oracle") {
        const ResistorNetwork net = latres::lattice::build_network(spec);
        values.emplace_back("oracle", engine_value(spec, a, b, "oracle", net));
    } else {
        const ResistorNetwork net(1);  // unused
        values.emplace_back(opt.method, engine_value(spec, a, b, opt.method, net));
    }

    double dev = 0.0, scale = 0.0;
    for (const auto& [name, v] : values) {
        scale = std::max(scale, std::abs(v));
        for (const auto& [name2, v2] : values) dev = std::max(dev, std::abs(v - v2));
    }
    const bool agree = dev <= opt.tolerance * std::max(1.0, scale);

    if (opt.format == "json") {
        JsonObject j;
        j.str("topology", opt.lat.topology)
            .integer("M", spec.M)
            .integer("N", spec.N)
            .num("r", spec.r)
            .num("s", spec.s)
            .str("from", node_label(a))
            .str("to", node_label(b))
            .str("method", opt.method)
            .num("R_ohms", values.front().second);
        if (opt.method == "all") j.num("max_deviation", dev);
        std::cout << j.dump() << "\n";
    } else if (opt.format == "csv") {
        const auto [x1, y1] = csv_fields(a);
        const auto [x2, y2] = csv_fields(b);
        std::cout << "x1,y1,x2,y2,R_ohms\n"
                  << x1 << "," << y1 << "," << x2 << "," << y2 << ","
                  << fmt12(values.front().second) << "\n";
    } else {
        for (const auto& [name, v] : values)
            std::cout << "R = " << fmt12(v) << " ohm (" << name << ")\n";
        if (opt.method == "all")
            std::cout << "max deviation = " << fmt12(dev) << "\n";
    }
    return (opt.method == "all" && !agree) ? 1 : 0;
}

// ----------------------------------------------------------------- table --

struct TableOptions {
    LatticeOptions lat;
    std::string method = "fast";
    int oracle_cap = 5000;
};

int run_table(const TableOptions& opt) {
    const LatticeSpec spec = opt.lat.spec();
    const int t = spec.node_count();
    if (opt.method == "oracle" && t > opt.oracle_cap)
        throw std::invalid_argument("node count " + std::to_string(t) +
                                    " exceeds the oracle cap " + std::to_string(opt.oracle_cap));

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(t) * (t - 1) / 2);
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) pairs.emplace_back(i, j);

    std::vector<double> values(pairs.size(), 0.0);
    if (opt.method == "oracle") {
        const Eigen::MatrixXd rm =
            latres::oracle::resistance_matrix(latres::lattice::build_network(spec));
        for (std::size_t k = 0; k < pairs.size(); ++k)
            values[k] = rm(pairs[k].first, pairs[k].second);
    } else {
        const ResistorNetwork unused(1);
        latres::util::parallel_for(pairs.size(), sweep_threads(), [&](std::size_t k) {
            const NodeRef a = latres::lattice::node_ref(spec, pairs[k].first);
            const NodeRef b = latres::lattice::node_ref(spec, pairs[k].second);
            values[k] = engine_value(spec, a, b, opt.method, unused);
        });
    }

    std::ostringstream out;
    out << "x1,y1,x2,y2,R_ohms\n";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [x1, y1] = csv_fields(latres::lattice::node_ref(spec, pairs[k].first));
        const auto [x2, y2] = csv_fields(latres::lattice::node_ref(spec, pairs[k].second));
        out << x1 << "," << y1 << "," << x2 << "," << y2 << "," << fmt12(values[k]) << "\n";
    }
    std::cout << out.str();
    return 0;
}

// ---------------------------------------------------------------- verify --

struct VerifyOptions {
    LatticeOptions lat;
    double tolerance = 1e-9;
    std::string format = "human";
};

int run_verify(const VerifyOptions& opt) {
    const LatticeSpec spec = opt.lat.spec();
    const int t = spec.node_count();
    const Eigen::MatrixXd rm =
        latres::oracle::resistance_matrix(latres::lattice::build_network(spec));

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) pairs.emplace_back(i, j);

    struct Dev {
        double abs = 0.0, rel = 0.0;
    };
    std::vector<Dev> devs(pairs.size());
    latres::util::parallel_for(pairs.size(), sweep_threads(), [&](std::size_t k) {
        const NodeRef a = latres::lattice::node_ref(spec, pairs[k].first);
        const NodeRef b = latres::lattice::node_ref(spec, pairs[k].second);
        const double fast = latres::engines::resistance(spec, a, b).ohms;
        const double dbl = latres::engines::resistance_double_sum(spec, a, b).ohms;
        const double ora = rm(pairs[k].first, pairs[k].second);
        const double dev = std::max({std::abs(fast - dbl), std::abs(fast - ora),
                                     std::abs(dbl - ora)});
        devs[k].abs = dev;
        devs[k].rel = dev / std::max(std::abs(ora), 1e-300);
    });

    std::size_t worst = 0;
    double max_abs = 0.0, max_rel = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        max_abs = std::max(max_abs, devs[k].abs);
        if (devs[k].rel > max_rel) {
            max_rel = devs[k].rel;
            worst = k;
        }
    }
    const bool ok = max_rel <= opt.tolerance;
    const std::string worst_pair =
        node_label(latres::lattice::node_ref(spec, pairs[worst].first)) + " - " +
        node_label(latres::lattice::node_ref(spec, pairs[worst].second));

    if (opt.format == "json") {
        std::cout << JsonObject{}
                         .str("topology", opt.lat.topology)
                         .integer("M", spec.M)
                         .integer("N", spec.N)
                         .num("r", spec.r)
                         .num("s", spec.s)
                         .integer("pairs", static_cast<long long>(pairs.size()))
                         .num("max_abs_deviation", max_abs)
                         .num("max_rel_deviation", max_rel)
                         .str("worst_pair", worst_pair)
                         .num("tolerance", opt.tolerance)
                         .boolean("within_tolerance", ok)
                         .dump()
                  << "\n";
    } else {
        std::cout << "pairs checked: " << pairs.size() << "\n"
                  << "max abs deviation = " << fmt12(max_abs) << " ohm\n"
                  << "max rel deviation = " << fmt12(max_rel) << " (worst pair " << worst_pair
                  << ")\n"
                  << (ok ? "OK" : "FAIL") << " (tolerance " << fmt12(opt.tolerance) << ")\n";
    }
    return ok ? 0 : 1;
}

// -------------------------------------------------------------- spectrum --

struct SpectrumOptions {
    std::string bc;
    int size = 1;
    std::string format = "json";
};

int run_spectrum(const SpectrumOptions& opt) {
    const latres::spectra::Spectrum1D sp =
        latres::spectra::spectrum(bc_names().at(opt.bc), opt.size);
    if (opt.format == "json") {
        auto join = [](const std::vector<double>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + fmt12(v[i]);
            return s + "]";
        };
        std::string vecs = "[";
        for (int n = 0; n < sp.size(); ++n) {
            vecs += n ? ",[" : "[";
            for (int x = 1; x <= sp.size(); ++x) {
                const std::complex<double> f = sp.eigenvector(n, x);
                vecs += std::string(x > 1 ? "," : "") + "[" + fmt12(f.real()) + "," +
                        fmt12(f.imag()) + "]";
            }
            vecs += "]";
        }
        vecs += "]";
        std::cout << JsonObject{}
                         .str("bc", opt.bc)
                         .integer("N", sp.size())
                         .raw("angles", join(sp.angles()))
                         .raw("eigenvalues", join(sp.eigenvalues()))
                         .raw("eigenvectors", vecs)
                         .dump()
                  << "\n";
    } else {
        for (int n = 0; n < sp.size(); ++n)
            std::cout << "mode " << n << ": angle = " << fmt12(sp.angles()[n])
                      << ", lambda = " << fmt12(sp.eigenvalues()[n]) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------- kirchhoff --

struct KirchhoffOptions {
    LatticeOptions lat;
    std::string input;
    std::string format = "human";
};

int run_kirchhoff(const KirchhoffOptions& opt) {
    double value = 0.0;
    JsonObject j;
    if (!opt.input.empty()) {
        std::ifstream in(opt.input);
        if (!in) throw std::invalid_argument("cannot open " + opt.input);
        value = latres::oracle::kirchhoff_index(latres::lattice::read_edge_list(in));
        j.str("input", opt.input);
    } else {
        const LatticeSpec spec = opt.lat.spec();
        value = latres::oracle::kirchhoff_index(latres::lattice::build_network(spec));
        j.str("topology", opt.lat.topology)
            .integer("M", spec.M)
            .integer("N", spec.N)
            .num("r", spec.r)
            .num("s", spec.s);
    }
    if (opt.format == "json") {
        std::cout << j.num("kirchhoff_index_ohms", value).dump() << "\n";
    } else {
        std::cout << "Kirchhoff index = " << fmt12(value) << " ohm\n";
    }
    return 0;
}

// ---------------------------------------------------------------- export --

struct ExportOptions {
    LatticeOptions lat;
    std::string output;
};

int run_export(const ExportOptions& opt) {
    const ResistorNetwork net = latres::lattice::build_network(opt.lat.spec());
    if (opt.output.empty()) {
        latres::lattice::write_edge_list(std::cout, net);
    } else {
        std::ofstream out(opt.output);
        if (!out) throw std::invalid_argument("cannot open " + opt.output);
        latres::lattice::write_edge_list(out, net);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact two-point resistance on structured resistor networks"};
    app.require_subcommand(1);

    ResistOptions resist;
    CLI::App* c_resist = app.add_subcommand("resist", "resistance between two nodes");
    add_lattice_options(c_resist, &resist.lat);
    c_resist->add_option("--from", resist.from, "endpoint: O, O' or x,y")->required();
    c_resist->add_option("--to", resist.to, "endpoint: O, O' or x,y")->required();
    c_resist->add_option("--method", resist.method, "fast|double|oracle|all")
        ->check(CLI::IsMember({"fast", "double", "oracle", "all"}));
    c_resist->add_option("--format", resist.format, "human|json|csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    c_resist->add_option("--tolerance", resist.tolerance, "agreement tolerance for --method all");
    c_resist->add_option("--input", resist.input,
                         "edge-list file; --from/--to become node ids, method oracle");

    TableOptions table;
    CLI::App* c_table = app.add_subcommand("table", "all-pairs resistance CSV");
    add_lattice_options(c_table, &table.lat);
    c_table->add_option("--method", table.method, "fast|double|oracle")
        ->check(CLI::IsMember({"fast", "double", "oracle"}));
    c_table->add_option("--max-oracle-nodes", table.oracle_cap,
                        "node cap for the oracle method");

    VerifyOptions verify;
    CLI::App* c_verify = app.add_subcommand("verify", "engines vs oracle over all pairs");
    add_lattice_options(c_verify, &verify.lat);
    c_verify->add_option("--tolerance", verify.tolerance, "max allowed relative deviation");
    c_verify->add_option("--format", verify.format, "human|json")
        ->check(CLI::IsMember({"human", "json"}));

    SpectrumOptions spectrum;
    CLI::App* c_spectrum = app.add_subcommand("spectrum", "1D chain Laplacian eigen-system");
    c_spectrum->add_option("--bc", spectrum.bc, "periodic|free|dd|dn")
        ->required()
        ->check(CLI::IsMember({"periodic", "free", "dd", "dn"}));
    c_spectrum->add_option("-N", spectrum.size, "chain length")->required();
    c_spectrum->add_option("--format", spectrum.format, "json|human")
        ->check(CLI::IsMember({"json", "human"}));

    KirchhoffOptions kirchhoff;
    CLI::App* c_kirchhoff = app.add_subcommand("kirchhoff", "Kirchhoff index");
    add_lattice_options(c_kirchhoff, &kirchhoff.lat);
    c_kirchhoff->add_option("--input", kirchhoff.input, "edge-list file instead of a topology");
    c_kirchhoff->add_option("--format", kirchhoff.format, "human|json")
        ->check(CLI::IsMember({"human", "json"}));

    ExportOptions exp;
    CLI::App* c_export = app.add_subcommand("export", "edge-list dump of the network");
    add_lattice_options(c_export, &exp.lat);
    c_export->add_option("--output", exp.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(c_resist)) return run_resist(resist);
        if (app.got_subcommand(c_table)) return run_table(table);
        if (app.got_subcommand(c_verify)) return run_verify(verify);
        if (app.got_subcommand(c_spectrum)) return run_spectrum(spectrum);
        if (app.got_subcommand(c_kirchhoff)) return run_kirchhoff(kirchhoff);
        if (app.got_subcommand(c_export)) return run_export(exp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
