#include "parabolic/extremal_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "parabolic/errors.hpp"
#include "parabolic/quadrature.hpp"

namespace parabolic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThetaMin = 1e-3;  // smallest boundary fraction used for a Dirichlet link
constexpr std::size_t kMaxCells = 80'000'000;

// Graph Laplacian with Dirichlet links folded into the diagonal. Slot order E, W, N, S.
struct Graph {
    std::size_t n = 0;
    int nx = 0, ny = 0;
    bool periodic = false;
    std::vector<std::array<int32_t, 4>> nbr;
    std::vector<std::array<double, 4>> w;
    std::vector<double> diag;
    std::vector<double> ca, cb;    // conductance to electrode a (u = 0) and b (u = 1)
    std::vector<int32_t> gi, gj;  // grid position
};

// Deterministic dot product: fixed blocks, then pairwise over block sums.
double dot(const std::vector<double>& a, const std::vector<double>& b) {
    constexpr std::size_t block = 256;
    const std::size_t n = a.size();
    std::vector<double> partial((n + block - 1) / block);
    for (std::size_t k = 0; k < partial.size(); ++k) {
        double s = 0.0;
        std::size_t end = std::min(n, (k + 1) * block);
        for (std::size_t i = k * block; i < end; ++i) s += a[i] * b[i];
        partial[k] = s;
    }
    return pairwise_sum(partial);
}

void apply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t p = 0; p < g.n; ++p) {
        double s = g.diag[p] * x[p];
        const auto& nb = g.nbr[p];
        const auto& w = g.w[p];
        for (int k = 0; k < 4; ++k)
            if (nb[k] >= 0) s -= w[k] * x[nb[k]];
        y[p] = s;
    }
}

// Intersection parameter of segment p->q with slit s, if any.
std::optional<double> cut(Point p, Point q, const Slit& s) {
    double rx = q.x - p.x, ry = q.y - p.y;
    double sx = s.b.x - s.a.x, sy = s.b.y - s.a.y;
    double den = rx * sy - ry * sx;
    if (den == 0.0) return std::nullopt;
    double ax = s.a.x - p.x, ay = s.a.y - p.y;
    double t = (ax * sy - ay * sx) / den;
    double u = (ax * ry - ay * rx) / den;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

struct Layout {
    int nx = 0, ny = 0;
    double h = 0.0;
};

Layout layout(const GridDomain& d, double h) {
    Layout l;
    if (d.periodic_x) {
        l.nx = std::max(1, static_cast<int>(std::lround(*d.periodic_x / h)));
        l.h = *d.periodic_x / l.nx;
    } else {
        l.h = h;
        l.nx = std::max(1, static_cast<int>(std::ceil((d.xmax - d.xmin) / h - 1e-9)));
    }
    l.ny = std::max(1, static_cast<int>(std::ceil((d.ymax - d.ymin) / l.h - 1e-9)));
    return l;
}

Graph build_graph(const GridDomain& d, const Layout& lay) {
    const int nx = lay.nx, ny = lay.ny;
    const double h = lay.h;
    if (static_cast<std::size_t>(nx) * ny > kMaxCells) {
        std::ostringstream os;
        os << d.name << ": grid " << nx << " x " << ny << " exceeds the cell budget";
        throw NumericError(os.str());
    }
    auto center = [&](int i, int j) { return Point{d.xmin + (i + 0.5) * h, d.ymin + (j + 0.5) * h}; };

    std::vector<uint8_t> in(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) in[static_cast<std::size_t>(j) * nx + i] = d.inside(center(i, j)) ? 1 : 0;

    // slit cuts keyed by (cell, direction) with direction 0 = east edge, 1 = north edge
    std::unordered_map<int64_t, double> cuts;
    for (const Slit& s : d.slits) {
        int i0 = static_cast<int>(std::floor((std::min(s.a.x, s.b.x) - d.xmin) / h - 0.5)) - 1;
        int i1 = static_cast<int>(std::floor((std::max(s.a.x, s.b.x) - d.xmin) / h - 0.5)) + 1;
        int j0 = static_cast<int>(std::floor((std::min(s.a.y, s.b.y) - d.ymin) / h - 0.5)) - 1;
        int j1 = static_cast<int>(std::floor((std::max(s.a.y, s.b.y) - d.ymin) / h - 0.5)) + 1;
        for (int j = std::max(j0, 0); j <= std::min(j1, ny - 1); ++j)
            for (int i = i0; i <= i1; ++i) {
                int ii = i;
                if (d.periodic_x) ii = ((i % nx) + nx) % nx;
                else if (i < 0 || i >= nx) continue;
                Point p = center(i, j);
                int64_t key = (static_cast<int64_t>(j) * nx + ii) * 2;
                if (auto t = cut(p, {p.x + h, p.y}, s)) cuts[key] = *t;
                if (auto t = cut(p, {p.x, p.y + h}, s)) cuts[key + 1] = *t;
            }
    }

    std::vector<int32_t> id(in.size(), -1);
    std::size_t n = 0;
    for (std::size_t c = 0; c < in.size(); ++c)
        if (in[c]) id[c] = static_cast<int32_t>(n++);

    Graph g;
    g.n = n;
    g.nx = nx;
    g.ny = ny;
    g.periodic = d.periodic_x.has_value();
    g.nbr.assign(n, {-1, -1, -1, -1});
    g.w.assign(n, {0, 0, 0, 0});
    g.diag.assign(n, 0.0);
    g.ca.assign(n, 0.0);
    g.cb.assign(n, 0.0);
    g.gi.resize(n);
    g.gj.resize(n);

    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int32_t p = id[static_cast<std::size_t>(j) * nx + i];
            if (p < 0) continue;
            g.gi[p] = i;
            g.gj[p] = j;
            Point pc = center(i, j);
            for (int k = 0; k < 4; ++k) {
                int qi = i + di[k], qj = j + dj[k];
                Point qc{pc.x + di[k] * h, pc.y + dj[k] * h};
                bool wrapped_ok = true;
                if (qi < 0 || qi >= nx) {
                    if (d.periodic_x) qi = (qi + nx) % nx;
                    else wrapped_ok = false;
                }
                bool q_in = wrapped_ok && qj >= 0 && qj < ny && in[static_cast<std::size_t>(qj) * nx + qi];
                if (q_in) {
                    // an edge is stored once, on the cell at its west / south end
                    int64_t key;
                    bool from_p;
                    if (k == 0) key = (static_cast<int64_t>(j) * nx + i) * 2, from_p = true;
                    else if (k == 1) key = (static_cast<int64_t>(j) * nx + qi) * 2, from_p = false;
                    else if (k == 2) key = (static_cast<int64_t>(j) * nx + i) * 2 + 1, from_p = true;
                    else key = (static_cast<int64_t>(qj) * nx + i) * 2 + 1, from_p = false;
                    auto it = cuts.find(key);
                    if (it != cuts.end()) {
                        double t = from_p ? it->second : 1.0 - it->second;
                        g.cb[p] += 1.0 / std::max(t, kThetaMin);
                    } else {
                        g.nbr[p][k] = id[static_cast<std::size_t>(qj) * nx + qi];
                        g.w[p][k] = 1.0;
                    }
                    continue;
                }
                // boundary crossing along p -> q
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 48; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (d.inside({pc.x + mid * (qc.x - pc.x), pc.y + mid * (qc.y - pc.y)})) lo = mid;
                    else hi = mid;
                }
                Point z{pc.x + hi * (qc.x - pc.x), pc.y + hi * (qc.y - pc.y)};
                double cond = 1.0 / std::max(hi, kThetaMin);
                if (d.electrode_a(z)) g.ca[p] += cond;
                else if (d.electrode_b(z)) g.cb[p] += cond;
            }
        }
    for (std::size_t p = 0; p < n; ++p) {
        double s = g.ca[p] + g.cb[p];
        for (int k = 0; k < 4; ++k) s += g.w[p][k];
        g.diag[p] = s;
    }
    return g;
}

// Drops components without Dirichlet links; requires one component touching both electrodes.
Graph prune(const Graph& g, const std::string& name) {
    std::vector<int32_t> comp(g.n, -1);
    std::vector<int32_t> stack;
    std::vector<uint8_t> keep(g.n, 0);
    bool connected = false;
    int32_t c = 0;
    for (std::size_t s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int32_t> members;
        bool has_a = false, has_b = false;
        stack.push_back(static_cast<int32_t>(s));
        comp[s] = c;
        while (!stack.empty()) {
            int32_t p = stack.back();
            stack.pop_back();
            members.push_back(p);
            has_a = has_a || g.ca[p] > 0.0;
            has_b = has_b || g.cb[p] > 0.0;
            for (int k = 0; k < 4; ++k) {
                int32_t q = g.nbr[p][k];
                if (q >= 0 && comp[q] < 0) {
                    comp[q] = c;
                    stack.push_back(q);
                }
            }
        }
        if (has_a || has_b)
            for (int32_t p : members) keep[p] = 1;
        connected = connected || (has_a && has_b);
        ++c;
    }
    if (!connected) throw NumericError(name + ": electrodes are not connected through the domain");
    std::vector<int32_t> remap(g.n, -1);
    std::size_t n = 0;
    for (std::size_t p = 0; p < g.n; ++p)
        if (keep[p]) remap[p] = static_cast<int32_t>(n++);
    if (n == g.n) return g;
    Graph r;
    r.n = n;
    r.nx = g.nx;
    r.ny = g.ny;
    r.periodic = g.periodic;
    r.nbr.resize(n);
    r.w.resize(n);
    r.diag.resize(n);
    r.ca.resize(n);
    r.cb.resize(n);
    r.gi.resize(n);
    r.gj.resize(n);
    for (std::size_t p = 0; p < g.n; ++p) {
        int32_t q = remap[p];
        if (q < 0) continue;
        for (int k = 0; k < 4; ++k) r.nbr[q][k] = g.nbr[p][k] >= 0 ? remap[g.nbr[p][k]] : -1;
        r.w[q] = g.w[p];
        r.diag[q] = g.diag[p];
        r.ca[q] = g.ca[p];
        r.cb[q] = g.cb[p];
        r.gi[q] = g.gi[p];
        r.gj[q] = g.gj[p];
    }
    return r;
}

// Dense Cholesky for the coarsest multigrid level.
struct DenseCholesky {
    std::size_t n = 0;
    std::vector<double> l;

    void factor(const Graph& g) {
        n = g.n;
        l.assign(n * n, 0.0);
        for (std::size_t p = 0; p < n; ++p) {
            l[p * n + p] = g.diag[p];
            for (int k = 0; k < 4; ++k)
                if (g.nbr[p][k] >= 0) l[p * n + g.nbr[p][k]] -= g.w[p][k];
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = l[j * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[j * n + k] * l[j * n + k];
            if (!(s > 0.0)) throw NumericError("coarse operator is not positive definite");
            double d = std::sqrt(s);
            l[j * n + j] = d;
            for (std::size_t i = j + 1; i < n; ++i) {
                double t = l[i * n + j];
                for (std::size_t k = 0; k < j; ++k) t -= l[i * n + k] * l[j * n + k];
                l[i * n + j] = t / d;
            }
        }
    }

    void solve(const std::vector<double>& b, std::vector<double>& x) const {
        x = b;
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];
            for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
            x[i] = s / l[i * n + i];
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = x[i];
            for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
            x[i] = s / l[i * n + i];
        }
    }
};

// Aggregation multigrid: 2x2 grid aggregates, Galerkin coarse operators, symmetric
// Gauss-Seidel smoothing and an over-relaxed coarse correction. Used as a fixed SPD
// preconditioner inside CG.
class Multigrid {
public:
    explicit Multigrid(const Graph& fine) {
        levels_.push_back(&fine);
        const Graph* cur = &fine;
        while (cur->n > kCoarsest && owned_.size() < 30) {
            std::vector<int32_t> agg;
            Graph c = coarsen(*cur, agg);
            if (c.n >= cur->n) break;
            aggregates_.push_back(std::move(agg));
            owned_.push_back(std::make_unique<Graph>(std::move(c)));
            cur = owned_.back().get();
            levels_.push_back(cur);
        }
        coarse_.factor(*levels_.back());
        work_r_.resize(levels_.size());
        work_z_.resize(levels_.size());
        work_t_.resize(levels_.size());
        for (std::size_t l = 0; l < levels_.size(); ++l) {
            work_r_[l].assign(levels_[l]->n, 0.0);
            work_z_[l].assign(levels_[l]->n, 0.0);
            work_t_[l].assign(levels_[l]->n, 0.0);
        }
    }

    void precondition(const std::vector<double>& r, std::vector<double>& z) {
        work_r_[0] = r;
        cycle(0);
        z = work_z_[0];
    }

    std::size_t depth() const { return levels_.size(); }

private:
    static constexpr std::size_t kCoarsest = 400;
    static constexpr double kCorrection = 1.7;

    static Graph coarsen(const Graph& g, std::vector<int32_t>& agg) {
        const int cnx = (g.nx + 1) / 2, cny = (g.ny + 1) / 2;
        std::vector<int32_t> slot(static_cast<std::size_t>(cnx) * cny, -1);
        Graph c;
        c.nx = cnx;
        c.ny = cny;
        c.periodic = g.periodic;
        agg.resize(g.n);
        // row-major numbering of the coarse cells that receive at least one node
        std::vector<uint8_t> used(slot.size(), 0);
        for (std::size_t p = 0; p < g.n; ++p) used[static_cast<std::size_t>(g.gj[p] / 2) * cnx + g.gi[p] / 2] = 1;
        std::size_t n = 0;
        for (std::size_t s = 0; s < slot.size(); ++s)
            if (used[s]) slot[s] = static_cast<int32_t>(n++);
        c.n = n;
        c.nbr.assign(n, {-1, -1, -1, -1});
        c.w.assign(n, {0, 0, 0, 0});
        c.diag.assign(n, 0.0);
        c.ca.assign(n, 0.0);
        c.cb.assign(n, 0.0);
        c.gi.resize(n);
        c.gj.resize(n);
        for (std::size_t p = 0; p < g.n; ++p) {
            int ci = g.gi[p] / 2, cj = g.gj[p] / 2;
            int32_t P = slot[static_cast<std::size_t>(cj) * cnx + ci];
            agg[p] = P;
            c.gi[P] = ci;
            c.gj[P] = cj;
        }
        for (std::size_t p = 0; p < g.n; ++p) {
            int32_t P = agg[p];
            double d = g.diag[p];
            for (int k = 0; k < 4; ++k) {
                int32_t q = g.nbr[p][k];
                if (q < 0) continue;
                int32_t Q = agg[q];
                if (Q == P) {
                    d -= g.w[p][k];
                    continue;
                }
                auto& nb = c.nbr[P];
                auto& w = c.w[P];
                int s = 0;
                while (s < 4 && nb[s] >= 0 && nb[s] != Q) ++s;
                if (s == 4) throw NumericError("aggregation produced more than four coarse neighbours");
                nb[s] = Q;
                w[s] += g.w[p][k];
            }
            c.diag[P] += d;
        }
        return c;
    }

    void smooth_forward(const Graph& g, const std::vector<double>& b, std::vector<double>& x) {
        for (std::size_t p = 0; p < g.n; ++p) {
            double s = b[p];
            for (int k = 0; k < 4; ++k)
                if (g.nbr[p][k] >= 0) s += g.w[p][k] * x[g.nbr[p][k]];
            x[p] = s / g.diag[p];
        }
    }

    void smooth_backward(const Graph& g, const std::vector<double>& b, std::vector<double>& x) {
        for (std::size_t p = g.n; p-- > 0;) {
            double s = b[p];
            for (int k = 0; k < 4; ++k)
                if (g.nbr[p][k] >= 0) s += g.w[p][k] * x[g.nbr[p][k]];
            x[p] = s / g.diag[p];
        }
    }

    void cycle(std::size_t l) {
        const Graph& g = *levels_[l];
        auto& r = work_r_[l];
        auto& z = work_z_[l];
        if (l + 1 == levels_.size()) {
            coarse_.solve(r, z);
            return;
        }
        std::fill(z.begin(), z.end(), 0.0);
        smooth_forward(g, r, z);
        auto& t = work_t_[l];
        apply(g, z, t);
        auto& rc = work_r_[l + 1];
        std::fill(rc.begin(), rc.end(), 0.0);
        const auto& agg = aggregates_[l];
        for (std::size_t p = 0; p < g.n; ++p) rc[agg[p]] += r[p] - t[p];
        cycle(l + 1);
        const auto& zc = work_z_[l + 1];
        for (std::size_t p = 0; p < g.n; ++p) z[p] += kCorrection * zc[agg[p]];
        smooth_backward(g, r, z);
    }

    std::vector<const Graph*> levels_;
    std::vector<std::unique_ptr<Graph>> owned_;
    std::vector<std::vector<int32_t>> aggregates_;
    DenseCholesky coarse_;
    std::vector<std::vector<double>> work_r_, work_z_, work_t_;
};

struct Solve {
    std::vector<double> u;
    int iterations = 0;
};

Solve conjugate_gradient(const Graph& g, std::vector<double> x, const OracleOptions& opt, const std::string& name) {
    std::vector<double> b(g.n);
    for (std::size_t p = 0; p < g.n; ++p) b[p] = g.cb[p];
    std::vector<double> r(g.n), z(g.n), p(g.n), ap(g.n);
    apply(g, x, ap);
    for (std::size_t i = 0; i < g.n; ++i) r[i] = b[i] - ap[i];
    const double bnorm = std::sqrt(dot(b, b));
    std::unique_ptr<Multigrid> mg;
    if (opt.preconditioner == Preconditioner::Multigrid) mg = std::make_unique<Multigrid>(g);
    auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
        switch (opt.preconditioner) {
            case Preconditioner::None: out = in; break;
            case Preconditioner::Jacobi:
                for (std::size_t i = 0; i < g.n; ++i) out[i] = in[i] / g.diag[i];
                break;
            case Preconditioner::Multigrid: mg->precondition(in, out); break;
        }
    };
    Solve s;
    if (std::sqrt(dot(r, r)) <= opt.cg_tol * bnorm) {
        s.u = std::move(x);
        return s;
    }
    precondition(r, z);
    p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= opt.max_iter; ++it) {
        apply(g, p, ap);
        double alpha = rz / dot(p, ap);
        for (std::size_t i = 0; i < g.n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if (std::sqrt(dot(r, r)) <= opt.cg_tol * bnorm) {
            s.u = std::move(x);
            s.iterations = it;
            return s;
        }
        precondition(r, z);
        double rz_new = dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < g.n; ++i) p[i] = z[i] + beta * p[i];
    }
    std::ostringstream os;
    os << name << ": conjugate gradient did not reach residual " << opt.cg_tol << " in " << opt.max_iter
       << " iterations";
    throw NumericError(os.str());
}

double energy(const Graph& g, const std::vector<double>& u) {
    std::vector<double> e(g.n);
    for (std::size_t p = 0; p < g.n; ++p) {
        double s = g.ca[p] * u[p] * u[p] + g.cb[p] * (1.0 - u[p]) * (1.0 - u[p]);
        for (int k = 0; k < 4; ++k) {
            int32_t q = g.nbr[p][k];
            if (q > static_cast<int32_t>(p)) s += g.w[p][k] * (u[p] - u[q]) * (u[p] - u[q]);
        }
        e[p] = s;
    }
    return pairwise_sum(e);
}

void check_resolution(const GridDomain& d, double h) {
    if (d.min_feature > 0.0 && d.min_feature < 3.0 * h * (1.0 - 1e-12)) {
        std::ostringstream os;
        os.precision(6);
        os << d.name << ": feature of width " << d.min_feature << " spans fewer than 3 cells at h = " << h
           << "; use h <= " << d.min_feature / 3.0;
        throw ResolutionError(os.str(), d.min_feature / 3.0);
    }
}

struct LevelResult {
    double energy = 0.0;
    int iterations = 0;
    Graph graph;
    std::vector<double> u;
};

LevelResult solve_level(const GridDomain& d, double h, const OracleOptions& opt, const LevelResult* coarser) {
    Layout lay = layout(d, h);
    LevelResult out;
    out.graph = prune(build_graph(d, lay), d.name);
    const Graph& g = out.graph;
    std::vector<double> x0(g.n, 0.5);
    if (coarser) {
        // inject the coarser solution into the child cells
        const Graph& c = coarser->graph;
        std::vector<int32_t> at(static_cast<std::size_t>(c.nx) * c.ny, -1);
        for (std::size_t p = 0; p < c.n; ++p) at[static_cast<std::size_t>(c.gj[p]) * c.nx + c.gi[p]] = static_cast<int32_t>(p);
        for (std::size_t p = 0; p < g.n; ++p) {
            int ci = g.gi[p] / 2, cj = g.gj[p] / 2;
            if (ci < c.nx && cj < c.ny) {
                int32_t q = at[static_cast<std::size_t>(cj) * c.nx + ci];
                if (q >= 0) x0[p] = coarser->u[q];
            }
        }
    }
    Solve s = conjugate_gradient(g, std::move(x0), opt, d.name);
    out.energy = energy(g, s.u);
    out.iterations = s.iterations;
    out.u = std::move(s.u);
    return out;
}

}  // namespace

double discrete_energy(const GridDomain& domain, const OracleOptions& options, int* iterations) {
    check_resolution(domain, domain.h);
    LevelResult r = solve_level(domain, domain.h, options, nullptr);
    if (iterations) *iterations = r.iterations;
    return r.energy;
}

ModulusEstimate discrete_modulus(const GridDomain& domain, const OracleOptions& options) {
    if (options.levels < 1) throw DomainError("oracle needs at least one mesh level");
    check_resolution(domain, domain.h);
    ModulusEstimate est;
    LevelResult prev;
    double h = domain.h;
    for (int l = 0; l < options.levels; ++l) {
        LevelResult cur = solve_level(domain, h, options, l > 0 ? &prev : nullptr);
        est.meshes.push_back(layout(domain, h).h);
        est.level_values.push_back(cur.energy);
        est.iterations.push_back(cur.iterations);
        est.unknowns.push_back(cur.graph.n);
        prev = std::move(cur);
        h *= 0.5;
    }
    const auto& v = est.level_values;
    if (v.size() >= 2) {
        double fine = v.back(), coarse = v[v.size() - 2];
        est.value = 2.0 * fine - coarse;
        est.error_bar = std::fabs(fine - coarse);
        est.extrapolated = true;
    } else {
        est.value = v.back();
    }
    return est;
}

GridDomain swap_electrodes(GridDomain d) {
    std::swap(d.electrode_a, d.electrode_b);
    if (!d.slits.empty()) throw DomainError("electrode swap is not defined for slit domains");
    return d;
}

GridDomain rectangle_domain(double width, double height, double h) {
    GridDomain d;
    d.name = "rectangle";
    d.h = h;
    d.xmax = width;
    d.ymax = height;
    d.inside = [=](Point p) { return p.x > 0.0 && p.x < width && p.y > 0.0 && p.y < height; };
    d.electrode_a = [=](Point p) { return p.y <= 0.0 && p.x > 0.0 && p.x < width; };
    d.electrode_b = [=](Point p) { return p.y >= height && p.x > 0.0 && p.x < width; };
    return d;
}

GridDomain annulus_domain(double r1, double r2, double h) {
    if (!(r2 > r1 && r1 > 0.0)) throw DomainError("annulus needs 0 < r1 < r2");
    GridDomain d;
    d.name = "annulus";
    d.h = h;
    d.xmin = d.ymin = -r2;
    d.xmax = d.ymax = r2;
    d.inside = [=](Point p) {
        double r = std::hypot(p.x, p.y);
        return r > r1 && r < r2;
    };
    d.electrode_a = [=](Point p) { return std::hypot(p.x, p.y) <= r1; };
    d.electrode_b = [=](Point p) { return std::hypot(p.x, p.y) >= r2; };
    return d;
}

GridDomain sector_domain(double r1, double r2, double phi0, double theta, double h) {
    if (!(r2 > r1 && r1 > 0.0 && theta > 0.0 && theta < kPi)) throw DomainError("sector needs 0 < r1 < r2, 0 < theta < pi");
    GridDomain d;
    d.name = "sector";
    d.h = h;
    // bounding box from the corners and any axis directions inside the opening
    double xs[4], ys[4];
    int k = 0;
    for (double r : {r1, r2})
        for (double a : {phi0, phi0 + theta}) {
            xs[k] = r * std::cos(a);
            ys[k] = r * std::sin(a);
            ++k;
        }
    d.xmin = *std::min_element(xs, xs + 4);
    d.xmax = *std::max_element(xs, xs + 4);
    d.ymin = *std::min_element(ys, ys + 4);
    d.ymax = *std::max_element(ys, ys + 4);
    for (int q = -4; q <= 4; ++q) {
        double a = q * kPi / 2.0;
        if (a > phi0 && a < phi0 + theta) {
            d.xmin = std::min(d.xmin, r2 * std::cos(a));
            d.xmax = std::max(d.xmax, r2 * std::cos(a));
            d.ymin = std::min(d.ymin, r2 * std::sin(a));
            d.ymax = std::max(d.ymax, r2 * std::sin(a));
        }
    }
    const double mid = phi0 + theta / 2.0;
    // signed angle relative to the bisector, in (-pi, pi]
    auto rel = [=](Point p) {
        double a = std::atan2(p.y, p.x) - mid;
        return std::remainder(a, 2.0 * kPi);
    };
    d.inside = [=](Point p) {
        double r = std::hypot(p.x, p.y);
        return r > r1 && r < r2 && std::fabs(rel(p)) < theta / 2.0;
    };
    d.electrode_a = [=](Point p) {
        double r = std::hypot(p.x, p.y);
        return r > r1 && r < r2 && rel(p) <= -theta / 2.0;
    };
    d.electrode_b = [=](Point p) {
        double r = std::hypot(p.x, p.y);
        return r > r1 && r < r2 && rel(p) >= theta / 2.0;
    };
    d.min_feature = r1 * 2.0 * std::sin(std::min(theta, kPi / 2.0) / 2.0);
    return d;
}

GridDomain maskit_sector_domain(double l, double h) {
    double theta = standard_sector_angle(l);
    GridDomain d = sector_domain(1.0, std::exp(l), kPi / 2.0 - theta, theta, h);
    d.name = "maskit-sector";
    return d;
}

CombGeometry comb_geometry(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("comb needs 0 < epsilon < 1");
    CombGeometry c;
    c.n_eps = static_cast<int>(std::ceil(1.0 / (epsilon * epsilon) - 1e-9));
    c.slit_count = std::max(0, c.n_eps - 2);
    if (c.n_eps < 3) throw DomainError("comb needs N_eps >= 3");
    return c;
}

GridDomain comb_domain(double epsilon, double h) {
    CombGeometry geo = comb_geometry(epsilon);
    const int n = geo.n_eps;
    const double e2 = epsilon * epsilon;
    if (h <= 0.0) {
        int m = 1;
        while (e2 < 3.0 / (static_cast<double>(n) * m)) ++m;
        h = 1.0 / (static_cast<double>(n) * m);
    }
    double cells_between = 1.0 / (n * h);
    if (cells_between < 2.0 - 1e-9 || std::fabs(cells_between - std::round(cells_between)) > 1e-6) {
        std::ostringstream os;
        os << "comb: mesh h = " << h << " must be 1/(N m) with m >= 2 to separate slits";
        throw ResolutionError(os.str(), 1.0 / (2.0 * n));
    }
    GridDomain d;
    d.name = "comb";
    d.h = h;
    d.xmax = 1.0;
    d.ymax = epsilon;
    d.inside = [=](Point p) { return p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < epsilon; };
    d.electrode_a = [=](Point p) { return p.y <= 0.0 && p.x > 0.0 && p.x < 1.0; };
    d.electrode_b = [=](Point p) { return p.y >= epsilon && p.x > 0.0 && p.x < 1.0; };
    for (int k = 2; k <= n - 1; ++k) {
        double x = static_cast<double>(k) / n;
        d.slits.push_back({{x, e2}, {x, epsilon}});
    }
    d.min_feature = std::min(e2, 1.0 / n);
    return d;
}

double minimum_gap(const PeriodicFunctionPair& pair) {
    constexpr int n = 16384;
    double best = pair.gap(pair.x1), arg = pair.x1;
    for (int i = 1; i < n; ++i) {
        double x = pair.x1 + pair.period * i / n;
        double v = pair.gap(x);
        if (v < best) best = v, arg = x;
    }
    // golden refinement around the best sample
    const double step = pair.period / n;
    double a = arg - step, b = arg + step;
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), e = a + gr * (b - a);
    for (int it = 0; it < 60; ++it) {
        if (pair.gap(c) < pair.gap(e)) b = e;
        else a = c;
        c = b - gr * (b - a);
        e = a + gr * (b - a);
    }
    return std::min({best, pair.gap(c), pair.gap(e)});
}

GridDomain graph_domain(const PeriodicFunctionPair& pair, double h) {
    GridDomain d;
    d.name = pair.name;
    d.h = h;
    d.xmin = pair.x1;
    d.xmax = pair.x2();
    d.periodic_x = pair.period;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 8192; ++i) {
        double x = pair.x1 + pair.period * i / 8192.0;
        lo = std::min(lo, pair.g(x));
        hi = std::max(hi, pair.f(x));
    }
    double pad = 1e-9 * (hi - lo);
    d.ymin = lo - pad;
    d.ymax = hi + pad;
    auto f = pair.f, g = pair.g;
    d.inside = [f, g](Point p) { return p.y > g(p.x) && p.y < f(p.x); };
    d.electrode_a = [g](Point p) { return p.y <= g(p.x); };
    d.electrode_b = [f](Point p) { return p.y >= f(p.x); };
    d.min_feature = minimum_gap(pair);
    return d;
}

GridDomain collar_domain(const std::variant<HalfCollarSpec, GluedCollarSpec>& spec, double h) {
    if (auto* s = std::get_if<HalfCollarSpec>(&spec)) {
        GridDomain d = graph_domain(nonstandard_half_collar_graphs(*s), h);
        d.name = "half-collar";
        return d;
    }
    GridDomain d = graph_domain(glued_collar_graphs(std::get<GluedCollarSpec>(spec)), h);
    d.name = "glued-collar";
    return d;
}

}  // namespace parabolic
