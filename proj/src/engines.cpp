#include "latres/engines.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "latres/kernels.hpp"

namespace latres::engines {

using lattice::LatticeSpec;
using lattice::NodeRef;
using lattice::Topology;
using spectra::BoundaryKind;
using spectra::Spectrum1D;

const char* to_string(Method m) {
    switch (m) {
        case Method::WuDoubleSum: return "wu-double-sum";
        case Method::FirstMinor: return "first-minor";
        case Method::GlobeDoubleSum: return "globe-double-sum";
        case Method::GlobeSingleSum: return "globe-single-sum";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

ProductSpectrum::ProductSpectrum(Spectrum1D x_factor, double weight_x,
                                 Spectrum1D y_factor, double weight_y)
    : x_(std::move(x_factor)), y_(std::move(y_factor)), wx_(weight_x), wy_(weight_y) {}

ProductSpectrum full_laplacian_spectrum(const LatticeSpec& spec) {
    spec.validate();
    BoundaryKind bx, by;
    switch (spec.topology) {
        case Topology::FreeRect:
            bx = BoundaryKind::Free;
            by = BoundaryKind::Free;
            break;
        case Topology::Cylinder:
            bx = BoundaryKind::Free;
            by = BoundaryKind::Periodic;
            break;
        case Topology::Torus:
            bx = BoundaryKind::Periodic;
            by = BoundaryKind::Periodic;
            break;
        default:
            throw std::invalid_argument("full_laplacian_spectrum: regular lattices only");
    }
    return {Spectrum1D(bx, spec.N), 1.0 / spec.r, Spectrum1D(by, spec.M), 1.0 / spec.s};
}

ProductSpectrum first_minor_spectrum(const LatticeSpec& spec) {
    spec.validate();
    BoundaryKind bx;
    switch (spec.topology) {
        case Topology::Cobweb: bx = BoundaryKind::Periodic; break;
        case Topology::Fan: bx = BoundaryKind::Free; break;
        default:
            throw std::invalid_argument("first_minor_spectrum: cobweb or fan only");
    }
    return {Spectrum1D(bx, spec.N), 1.0 / spec.r,
            Spectrum1D(BoundaryKind::DirichletNeumann, spec.M), 1.0 / spec.s};
}

ProductSpectrum second_minor_spectrum(const LatticeSpec& spec) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("second_minor_spectrum: globe only");
    return {Spectrum1D(BoundaryKind::Periodic, spec.N), 1.0 / spec.r,
            Spectrum1D(BoundaryKind::DirichletDirichlet, spec.M), 1.0 / spec.s};
}

namespace {

// Per-pair tables over the longitudinal (x-factor) modes.  With
// w_n = f_n(x1) conj(f_n(x2)) and z_m = g_m(y1) conj(g_m(y2)), the summand of
// every double-sum engine is
//   |f g(y1) - f g(y2)|^2 = |g(y1)|^2 p_n + |g(y2)|^2 q_n
//                           - 2 Re(z_m) wr_n + 2 Im(z_m) wi_n
// over the mode eigenvalue, which is exactly the kernels' rational form.
struct PairTables {
    std::vector<double> p, q, wr, wi, den;
};

PairTables make_pair_tables(const ProductSpectrum& ps, int x1, int x2) {
    const auto& xf = ps.x_factor();
    const int nx = ps.modes_x();
    PairTables t;
    t.p.resize(nx);
    t.q.resize(nx);
    t.wr.resize(nx);
    t.wi.resize(nx);
    t.den.resize(nx);
    for (int n = 0; n < nx; ++n) {
        const std::complex<double> fa = xf.eigenvector(n, x1);
        const std::complex<double> fb = xf.eigenvector(n, x2);
        const std::complex<double> w = fa * std::conj(fb);
        t.p[n] = std::norm(fa);
        t.q[n] = std::norm(fb);
        t.wr[n] = w.real();
        t.wi[n] = w.imag();
        t.den[n] = ps.weight_x() * xf.eigenvalues()[n];
    }
    return t;
}

// sum over modes of |psi(x1,y1) - psi(x2,y2)|^2 / lambda.  With
// skip_zero_mode the (m,n) = (0,0) mode is dropped by index.
double pair_mode_sum(const ProductSpectrum& ps, int x1, int y1, int x2, int y2,
                     bool skip_zero_mode) {
    const PairTables t = make_pair_tables(ps, x1, x2);
    const auto& yf = ps.y_factor();
    const std::size_t nx = t.p.size();
    double acc = 0.0;
    for (int m = 0; m < ps.modes_y(); ++m) {
        const std::complex<double> ga = yf.eigenvector(m, y1);
        const std::complex<double> gb = yf.eigenvector(m, y2);
        const std::complex<double> z = ga * std::conj(gb);
        const double shift = ps.weight_y() * yf.eigenvalues()[m];
        const std::size_t off = (skip_zero_mode && m == 0) ? 1 : 0;
        acc += kernels::mode_sum(t.p.data() + off, t.q.data() + off,
                                 t.wr.data() + off, t.wi.data() + off,
                                 std::norm(ga), std::norm(gb), -2.0 * z.real(), 2.0 * z.imag(),
                                 t.den.data() + off, shift, nx - off);
    }
    return acc;
}

// sum over modes of |psi(x,y)|^2 / lambda (diagonal entry of the inverse
// minor; the other endpoint is the deleted hub, whose entries vanish).
double node_mode_sum(const ProductSpectrum& ps, int x, int y) {
    const PairTables t = make_pair_tables(ps, x, x);
    const auto& yf = ps.y_factor();
    const std::size_t nx = t.p.size();
    double acc = 0.0;
    for (int m = 0; m < ps.modes_y(); ++m) {
        const double gy = std::norm(yf.eigenvector(m, y));
        const double shift = ps.weight_y() * yf.eigenvalues()[m];
        acc += kernels::mode_sum(t.p.data(), t.p.data(), t.p.data(), t.p.data(),
                                 gy, 0.0, 0.0, 0.0, t.den.data(), shift, nx);
    }
    return acc;
}

void require_grid(const LatticeSpec& spec, const NodeRef& ref, const char* who) {
    if (ref.kind != NodeRef::Kind::Grid)
        throw std::invalid_argument(std::string(who) + ": grid endpoints only");
    lattice::node_index(spec, ref);  // range check
}

bool is_pole(const NodeRef& ref) { return ref.kind != NodeRef::Kind::Grid; }

ResistanceResult make_result(double ohms, Method method, const LatticeSpec& spec,
                             const NodeRef& a, const NodeRef& b) {
    return {ohms, method, spec, a, b};
}

}  // namespace

ResistanceResult resistance_regular(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    spec.validate();
    if (spec.topology != Topology::FreeRect && spec.topology != Topology::Cylinder &&
        spec.topology != Topology::Torus)
        throw std::invalid_argument("resistance_regular: free, cylinder or torus only");
    require_grid(spec, a, "resistance_regular");
    require_grid(spec, b, "resistance_regular");
    if (a == b) return make_result(0.0, Method::WuDoubleSum, spec, a, b);
    const ProductSpectrum ps = full_laplacian_spectrum(spec);
    const double r = pair_mode_sum(ps, a.x, a.y, b.x, b.y, /*skip_zero_mode=*/true);
    return make_result(r, Method::WuDoubleSum, spec, a, b);
}

ResistanceResult resistance_first_minor(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    spec.validate();
    if (spec.topology != Topology::Cobweb && spec.topology != Topology::Fan)
        throw std::invalid_argument("resistance_first_minor: cobweb or fan only");
    if (a.kind == NodeRef::Kind::PoleNorth || b.kind == NodeRef::Kind::PoleNorth)
        throw std::invalid_argument("resistance_first_minor: no pole O' on this topology");
    if (a.kind == NodeRef::Kind::Grid) lattice::node_index(spec, a);
    if (b.kind == NodeRef::Kind::Grid) lattice::node_index(spec, b);
    if (a == b) return make_result(0.0, Method::FirstMinor, spec, a, b);
    const ProductSpectrum ps = first_minor_spectrum(spec);
    double r = 0.0;
    if (a.kind == NodeRef::Kind::PoleSouth) {
        r = node_mode_sum(ps, b.x, b.y);
    } else if (b.kind == NodeRef::Kind::PoleSouth) {
        r = node_mode_sum(ps, a.x, a.y);
    } else {
        r = pair_mode_sum(ps, a.x, a.y, b.x, b.y, /*skip_zero_mode=*/false);
    }
    return make_result(r, Method::FirstMinor, spec, a, b);
}

GlobeModeData globe_mode_data(const LatticeSpec& spec) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("globe_mode_data: globe only");
    const Spectrum1D dd(BoundaryKind::DirichletDirichlet, spec.M);
    GlobeModeData d;
    d.M = spec.M;
    d.N = spec.N;
    d.h = spec.h();
    const double sqrth = std::sqrt(d.h);
    d.phi = dd.angles();
    d.lambda.resize(spec.M);
    d.sinh2.resize(spec.M);
    d.coth_n.resize(spec.M);
    d.u2.resize(spec.M);
    d.f2.resize(spec.M);
    d.f2n.resize(spec.M);
    for (int m = 0; m < spec.M; ++m) {
        const double sp = std::sin(d.phi[m]);
        const double sh = sqrth * sp;  // sinh(lambda_m)
        const double lam = std::asinh(sh);
        d.lambda[m] = lam;
        d.sinh2[m] = 2.0 * sh * std::sqrt(1.0 + sh * sh);  // 2 sh ch, overflow-free
        d.u2[m] = std::exp(-2.0 * lam);
        d.f2[m] = -std::expm1(-4.0 * lam);
        d.f2n[m] = -std::expm1(-2.0 * spec.N * lam);
        d.coth_n[m] = (1.0 + std::exp(-2.0 * spec.N * lam)) / d.f2n[m];
    }
    return d;
}

namespace {

// base^e by squaring; underflow decays to zero, which the ratios tolerate.
double ipow(double base, int e) {
    double acc = 1.0;
    for (double b = base; e > 0; e >>= 1, b *= b)
        if (e & 1) acc *= b;
    return acc;
}

// sin((m+1) * delta) for m = 0, 1, 2, ... via rotation; two trig calls total.
class SinSequence {
public:
    explicit SinSequence(double delta) : step_c_(std::cos(delta)), step_s_(std::sin(delta)) {}
    double next() {
        const double s = cur_s_ * step_c_ + cur_c_ * step_s_;
        cur_c_ = cur_c_ * step_c_ - cur_s_ * step_s_;
        cur_s_ = s;
        return s;
    }

private:
    double step_c_, step_s_;
    double cur_s_ = 0.0, cur_c_ = 1.0;
};

constexpr double kPi = std::numbers::pi;

}  // namespace

double globe_single_sum(const GlobeModeData& d, double s, int x1, int y1, int x2, int y2) {
    const double r = d.h * s;
    const int ell = std::abs(x1 - x2);
    const int j = std::min(ell, d.N - ell);
    const double dy = static_cast<double>(y2 - y1);
    // sin(2 y phi_m) = sin((m+1) y pi/(M+1))
    SinSequence seq1(y1 * kPi / (d.M + 1));
    SinSequence seq2(y2 * kPi / (d.M + 1));
    double acc = 0.0;
    for (int m = 0; m < d.M; ++m) {
        const double s1 = seq1.next();
        const double s2 = seq2.next();
        const double a = s1 * s1 + s2 * s2;
        const double b = 2.0 * s1 * s2;
        // cosh((N-2l) lam) / (sinh 2lam sinh N lam) through powers of
        // u2 = exp(-2 lam): bounded for any N lam, no hyperbolics in the loop.
        const double u2 = d.u2[m];
        const double ratio =
            2.0 * ipow(u2, j + 1) * (1.0 + ipow(u2, d.N - 2 * j)) / (d.f2[m] * d.f2n[m]);
        acc += a * d.coth_n[m] / d.sinh2[m] - b * ratio;
    }
    return s * dy * dy / (d.N * (d.M + 1)) + r / (d.M + 1) * acc;
}

double globe_single_sum_column(const GlobeModeData& d, double s, int y1, int y2) {
    const double r = d.h * s;
    const double dy = static_cast<double>(y2 - y1);
    SinSequence seq1(y1 * kPi / (d.M + 1));
    SinSequence seq2(y2 * kPi / (d.M + 1));
    double acc = 0.0;
    for (int m = 0; m < d.M; ++m) {
        const double ds = seq1.next() - seq2.next();
        acc += ds * ds * d.coth_n[m] / d.sinh2[m];
    }
    return s * dy * dy / (d.N * (d.M + 1)) + r / (d.M + 1) * acc;
}

double globe_single_sum_row(const GlobeModeData& d, double s, int x1, int x2, int y) {
    const double r = d.h * s;
    const int ell = std::abs(x1 - x2);
    SinSequence seq(y * kPi / (d.M + 1));
    double acc = 0.0;
    for (int m = 0; m < d.M; ++m) {
        const double sy = seq.next();
        // sinh(l lam) sinh((N-l) lam) / sinh(N lam), again via u2 powers.
        const double u2 = d.u2[m];
        const double ratio =
            (1.0 - ipow(u2, ell)) * (1.0 - ipow(u2, d.N - ell)) / (2.0 * d.f2n[m]);
        acc += sy * sy * ratio / d.sinh2[m];
    }
    return 4.0 * r / (d.M + 1) * acc;
}

namespace {

// Mode data is immutable and depends only on (M, N, r, s); repeated queries
// on one lattice (tables, verification sweeps) share one copy.
std::shared_ptr<const GlobeModeData> shared_globe_mode_data(const LatticeSpec& spec) {
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const GlobeModeData>> cache;
    const Key key{spec.M, spec.N, spec.r, spec.s};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() >= 64) cache.clear();
    auto data = std::make_shared<const GlobeModeData>(globe_mode_data(spec));
    cache.emplace(key, data);
    return data;
}

}  // namespace

ResistanceResult resistance_globe(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("resistance_globe: globe only");
    if (is_pole(a) || is_pole(b)) return resistance_globe_pole(spec, a, b);
    require_grid(spec, a, "resistance_globe");
    require_grid(spec, b, "resistance_globe");
    if (a == b) return make_result(0.0, Method::GlobeDoubleSum, spec, a, b);
    const ProductSpectrum ps = second_minor_spectrum(spec);
    const double dy = static_cast<double>(b.y - a.y);
    const double r = spec.s * dy * dy / (spec.N * (spec.M + 1)) +
                     pair_mode_sum(ps, a.x, a.y, b.x, b.y, /*skip_zero_mode=*/false);
    return make_result(r, Method::GlobeDoubleSum, spec, a, b);
}

ResistanceResult resistance_globe_fast(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("resistance_globe_fast: globe only");
    if (is_pole(a) || is_pole(b)) return resistance_globe_pole(spec, a, b);
    require_grid(spec, a, "resistance_globe_fast");
    require_grid(spec, b, "resistance_globe_fast");
    if (a == b) return make_result(0.0, Method::GlobeSingleSum, spec, a, b);
    const auto d = shared_globe_mode_data(spec);
    double r = 0.0;
    if (a.x == b.x) {
        r = globe_single_sum_column(*d, spec.s, a.y, b.y);
    } else if (a.y == b.y) {
        r = globe_single_sum_row(*d, spec.s, a.x, b.x, a.y);
    } else {
        r = globe_single_sum(*d, spec.s, a.x, a.y, b.x, b.y);
    }
    return make_result(r, Method::GlobeSingleSum, spec, a, b);
}

ResistanceResult resistance_globe_pole(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("resistance_globe_pole: globe only");
    if (!is_pole(a) && !is_pole(b))
        throw std::invalid_argument("resistance_globe_pole: needs a pole endpoint");
    if (a == b) return make_result(0.0, Method::GlobeSingleSum, spec, a, b);
    if (is_pole(a) && is_pole(b)) {
        // O <-> O': every latitude row is an equipotential ring; exact form.
        const double r = spec.s * (spec.M + 1) / spec.N;
        return make_result(r, Method::GlobeSingleSum, spec, a, b);
    }
    const NodeRef pole = is_pole(a) ? a : b;
    const NodeRef grid = is_pole(a) ? b : a;
    require_grid(spec, grid, "resistance_globe_pole");
    // The pole acts as a virtual grid row where the DD eigenvectors vanish:
    // y = 0 for O, mirrored to M+1-y for O'.
    const int y0 = pole.kind == NodeRef::Kind::PoleSouth ? grid.y : spec.M + 1 - grid.y;
    const auto d = shared_globe_mode_data(spec);
    const double r = globe_single_sum_column(*d, spec.s, 0, y0);
    return make_result(r, Method::GlobeSingleSum, spec, a, b);
}

oracle::PotentialSolution potentials_second_minor(const LatticeSpec& spec, NodeRef a,
                                                  NodeRef b, double current) {
    spec.validate();
    if (spec.topology != Topology::Globe)
        throw std::invalid_argument("potentials_second_minor: globe only");
    if (a == b) throw std::invalid_argument("potentials_second_minor: endpoints must differ");
    const int ia = lattice::node_index(spec, a);
    const int ib = lattice::node_index(spec, b);
    const int M = spec.M, N = spec.N;
    const int t = M * N + 2;
    const int north = M * N + 1;

    oracle::PotentialSolution sol;
    sol.grounded = north;
    sol.injected.assign(static_cast<std::size_t>(t), 0.0);
    sol.injected[ia] = current;
    sol.injected[ib] = -current;
    sol.potentials.assign(static_cast<std::size_t>(t), 0.0);

    const ProductSpectrum ps = second_minor_spectrum(spec);

    // w = Linv * I over the minor's nodes; only grid endpoints inject there.
    struct GridInjection {
        int x, y;
        double amps;
    };
    std::vector<GridInjection> inj;
    if (a.kind == NodeRef::Kind::Grid) inj.push_back({a.x, a.y, current});
    if (b.kind == NodeRef::Kind::Grid) inj.push_back({b.x, b.y, -current});

    std::vector<std::complex<double>> coef(static_cast<std::size_t>(M) * N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            std::complex<double> c{0.0, 0.0};
            for (const auto& g : inj)
                c += std::conj(ps.eigenvector(m, n, g.x, g.y)) * g.amps;
            coef[static_cast<std::size_t>(m) * N + n] = c / ps.eigenvalue(m, n);
        }

    std::vector<double> w(static_cast<std::size_t>(M) * N, 0.0);
    for (int y = 1; y <= M; ++y)
        for (int x = 1; x <= N; ++x) {
            std::complex<double> v{0.0, 0.0};
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < N; ++n)
                    v += ps.eigenvector(m, n, x, y) * coef[static_cast<std::size_t>(m) * N + n];
            w[static_cast<std::size_t>(y - 1) * N + (x - 1)] = v.real();
        }

    // Eliminate the south pole: its Kirchhoff equation fixes
    //   V_0 = (I_0 + s^{-1} sum_{row 1} w) / D,   D = N / (s (M+1)),
    // and each grid potential picks up V_0 * (M+1-y)/(M+1).
    double i0 = 0.0;
    if (a.kind == NodeRef::Kind::PoleSouth) i0 = current;
    if (b.kind == NodeRef::Kind::PoleSouth) i0 = -current;
    double row1 = 0.0;
    for (int x = 1; x <= N; ++x) row1 += w[static_cast<std::size_t>(x - 1)];
    const double d = N / (spec.s * (M + 1));
    const double v0 = (i0 + row1 / spec.s) / d;

    sol.potentials[0] = v0;
    for (int y = 1; y <= M; ++y) {
        const double uy = static_cast<double>(M + 1 - y) / (M + 1);
        for (int x = 1; x <= N; ++x) {
            const int id = lattice::node_index(spec, NodeRef::grid(x, y));
            sol.potentials[id] = v0 * uy + w[static_cast<std::size_t>(y - 1) * N + (x - 1)];
        }
    }
    sol.potentials[north] = 0.0;
    return sol;
}

ResistanceResult resistance(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    switch (spec.topology) {
        case Topology::FreeRect:
        case Topology::Cylinder:
        case Topology::Torus:
            return resistance_regular(spec, a, b);
        case Topology::Cobweb:
        case Topology::Fan:
            return resistance_first_minor(spec, a, b);
        case Topology::Globe:
            return resistance_globe_fast(spec, a, b);
    }
    throw std::invalid_argument("resistance: unknown topology");
}

ResistanceResult resistance_double_sum(const LatticeSpec& spec, NodeRef a, NodeRef b) {
    if (spec.topology == Topology::Globe) return resistance_globe(spec, a, b);
    return resistance(spec, a, b);
}

}  // namespace latres::engines
