// Optimal constructions, GF(2) chain complexes and the discrete Laplace
// identity residual.

#include "bsing/morse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bsing/desing.hpp"

namespace bsing {

namespace {
constexpr double kPi = std::numbers::pi;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

/// Rank of a GF(2) matrix given as rows of uint8 entries.
int gf2_rank(std::vector<std::vector<std::uint8_t>> m) {
    if (m.empty() || m[0].empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t pivot = pr;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pr], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || m[r][c] == 0) continue;
            for (std::size_t cc = 0; cc < cols; ++cc) m[r][cc] ^= m[pr][cc];
        }
        ++pr;
        ++rank;
    }
    return rank;
}
}  // namespace

// ------------------------------------------------------------------ inventories

CriticalInventory perfect_morse_inventory(int g) {
    if (g < 0) throw std::invalid_argument("genus must be >= 0");
    CriticalInventory inv;
    inv.c_min = 1;
    inv.c_saddle = 2 * g;
    inv.c_max = 1;
    if (g == 0) {
        // double-well-free sphere height model: poles of the round sphere
        inv.positions_min = {{0.0, 0.0}};
        inv.positions_max = {{0.0, 1.0}};
    } else if (g == 1) {
        // flat-torus model cos x + cos y
        inv.positions_max = {{0.0, 0.0}};
        inv.positions_min = {{kPi, kPi}};
        inv.positions_saddle = {{0.0, kPi}, {kPi, 0.0}};
    }
    return inv;
}

bool euler_identity_check(const CriticalInventory& inv, int g) {
    return inv.c_min - inv.c_saddle + inv.c_max == 2 - 2 * g;
}

int morse_inequality_bound(int deg, int g, int c_extrema_min) {
    if (deg < 1) throw std::invalid_argument("degree must be >= 1");
    if (c_extrema_min < 0) c_extrema_min = std::max(deg, 2);
    return std::max(2 * c_extrema_min + 2 * g - 2, 2 * g + 2);
}

// ---------------------------------------------------------------- chain complex

bool ChainComplexGF2::boundary_squares_to_zero() const {
    // (d1 * d2)[i][l] over GF(2)
    for (int i = 0; i < counts[0]; ++i)
        for (int l = 0; l < counts[2]; ++l) {
            int acc = 0;
            for (int j = 0; j < counts[1]; ++j) acc ^= d1[i][j] & d2[j][l];
            if (acc) return false;
        }
    return true;
}

std::array<int, 3> homology_gf2(const ChainComplexGF2& c) {
    if ((int)c.d1.size() != c.counts[0] || (int)c.d2.size() != c.counts[1])
        throw std::invalid_argument("boundary matrix shape mismatch");
    if (!c.boundary_squares_to_zero())
        throw std::invalid_argument("boundary does not square to zero");
    int r1 = gf2_rank(c.d1);  // rank of d: C1 -> C0
    int r2 = gf2_rank(c.d2);  // rank of d: C2 -> C1
    return {c.counts[0] - r1, c.counts[1] - r1 - r2, c.counts[2] - r2};
}

namespace {

/// Follow sigma * grad F from x0 for the double well F = (x^2-1)^2 + y^2;
/// returns the limit point for descent, or a far-away point for ascent.
Vec2 follow_gradient(Vec2 x, double sigma) {
    auto grad = [](const Vec2& p) -> Vec2 {
        return {4.0 * p[0] * (p[0] * p[0] - 1.0), 2.0 * p[1]};
    };
    double dt = 1e-3;
    for (int it = 0; it < 400000; ++it) {
        Vec2 g = grad(x);
        double n = std::hypot(g[0], g[1]);
        if (sigma < 0.0 && n < 1e-12) break;
        if (std::hypot(x[0], x[1]) > 50.0) break;  // escaped to infinity
        // 2nd-order midpoint step
        Vec2 xm{x[0] + 0.5 * dt * sigma * g[0], x[1] + 0.5 * dt * sigma * g[1]};
        Vec2 gm = grad(xm);
        x[0] += dt * sigma * gm[0];
        x[1] += dt * sigma * gm[1];
    }
    return x;
}

}  // namespace

ChainComplexGF2 sphere_model_complex() {
    // generators: minima (-1,0), (1,0); saddle (0,0); max = point at infinity
    ChainComplexGF2 c;
    c.counts = {2, 1, 1};
    c.d1.assign(2, std::vector<std::uint8_t>(1, 0));
    c.d2.assign(1, std::vector<std::uint8_t>(1, 0));

    // descending lines out of the saddle along its unstable axis (+-x)
    for (double dir : {1.0, -1.0}) {
        Vec2 end = follow_gradient({dir * 1e-4, 0.0}, -1.0);
        int which = end[0] < 0.0 ? 0 : 1;
        c.d1[which][0] ^= 1;
    }
    // ascending lines out of the saddle along +-y, each reaching the max at
    // infinity: their count mod 2 is the coefficient of the saddle in d(max)
    int ascents = 0;
    for (double dir : {1.0, -1.0}) {
        Vec2 end = follow_gradient({0.0, dir * 1e-4}, +1.0);
        if (std::hypot(end[0], end[1]) > 40.0) ++ascents;
    }
    c.d2[0][0] = std::uint8_t(ascents % 2);
    return c;
}

// --------------------------------------------------------- optimal construction

OptimalConstruction optimal_b_function(const BSurface& s, int order) {
    s.validate();
    BGraph g = build_graph(s);

    OptimalConstruction out;
    out.order = order;
    out.total_expected = arnold_bound_surface(g);

    // per-circle disk sign: +1 = max-disk, -1 = min-disk
    std::map<std::string, int> disk_sign;
    if (order % 2 == 1) {
        auto colors = edge_two_color(g);
        if (!colors) {
            auto tc = two_color(g);
            std::ostringstream msg;
            msg << "no edge 2-coloring: odd cycle through edges";
            for (const auto& e : tc.odd_walk_witness) msg << " " << e;
            throw std::invalid_argument(msg.str());
        }
        out.edge_signs = *colors;
        disk_sign = colors->sign;
    } else {
        out.orientation = good_orientation(g);
        for (const auto& [eid, dir] : out.orientation->directed)
            disk_sign[eid] = 1;  // outgoing at dir.first; resolved per vertex below
    }

    for (const auto& v : g.vertices) {
        const SurfaceComponent* comp = s.find_component(v.id);
        VertexConstruction vc;
        vc.vertex_id = v.id;
        vc.genus = v.genus;
        vc.degree = comp->degree();
        vc.expected_interior = 2 * v.genus + std::abs(vc.degree - 2);

        // disk signs at this vertex
        std::vector<int> signs_here;
        for (const auto& [cid, side] : comp->boundary) {
            int sgn;
            if (order % 2 == 1) {
                sgn = disk_sign.at(cid);
            } else {
                const auto& dir = out.orientation->directed.at(cid);
                sgn = dir.first == v.id ? +1 : -1;  // outgoing -> max-disk
            }
            vc.inventory.disk_signs.emplace_back(cid, sgn);
            signs_here.push_back(sgn);
        }
        if (vc.degree >= 2) {
            bool has_pos = false, has_neg = false;
            for (int sgn : signs_here) (sgn > 0 ? has_pos : has_neg) = true;
            if (!has_pos || !has_neg)
                throw std::invalid_argument(
                    "vertex " + v.id + " of degree >= 2 lacks a max-disk or a min-disk");
        }

        vc.inventory.component_id = v.id;
        int d = vc.degree, gen = v.genus;
        if (d == 0) {
            vc.inventory.c_min = 1;
            vc.inventory.c_saddle = 2 * gen;
            vc.inventory.c_max = 1;
        } else if (d == 1) {
            // the single disk carries one extremum, the interior the other
            vc.inventory.c_min = 1;
            vc.inventory.c_saddle = 2 * gen;
            vc.inventory.c_max = 1;
        } else {
            int p = 0, n = 0;
            for (int sgn : signs_here) (sgn > 0 ? p : n)++;
            vc.inventory.c_max = p;
            vc.inventory.c_min = n;
            vc.inventory.c_saddle = 2 * gen + d - 2;
        }

        if (gen <= 1 && !(gen == 1 && d > 2)) vc.interior = default_interior_model(gen, d);
        out.vertices.push_back(std::move(vc));
    }
    return out;
}

// --------------------------------------------------------------- discrete Floer

double& FloerGrid::at(std::vector<double>& v, int i, int j) { return v[i * nt + j]; }
double FloerGrid::at(const std::vector<double>& v, int i, int j) const {
    return v[i * nt + j];
}

FloerGrid FloerGrid::make(int ns, int nt, double hs, double ht, int order, double eps) {
    if (ns < 2 || nt < 3) throw std::invalid_argument("grid too small for a stencil");
    FloerGrid g;
    g.ns = ns;
    g.nt = nt;
    g.hs = hs;
    g.ht = ht;
    g.order = order;
    g.eps = eps;
    g.z_floor = 1e-3 * eps;
    g.z.assign(std::size_t(ns + 1) * nt, 0.5 * eps);
    g.theta.assign(std::size_t(ns + 1) * nt, 0.0);
    g.k.assign(std::size_t(ns + 1) * nt, 0.0);
    return g;
}

FloerResidual discrete_floer_residual(const FloerGrid& grid) {
    auto f = [&](double z) {
        if (grid.order == 1) return std::log(std::abs(z));
        return -1.0 / (double(grid.order - 1) * ipow(z, grid.order - 1));
    };
    for (int i = 0; i <= grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            double z = grid.at(grid.z, i, j);
            double az = std::abs(z);
            if (az <= grid.z_floor || az >= grid.eps)
                throw std::runtime_error("stencil point left the collar band");
        }

    FloerResidual out;
    out.ns = grid.ns;
    out.nt = grid.nt;
    out.field.assign(std::size_t(grid.ns - 1) * grid.nt, 0.0);
    double hs2 = grid.hs * grid.hs, ht2 = grid.ht * grid.ht;
    for (int i = 1; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            int jm = (j + grid.nt - 1) % grid.nt, jp = (j + 1) % grid.nt;
            double fc = f(grid.at(grid.z, i, j));
            double lap = (f(grid.at(grid.z, i + 1, j)) - 2.0 * fc +
                          f(grid.at(grid.z, i - 1, j))) / hs2 +
                         (f(grid.at(grid.z, i, jp)) - 2.0 * fc +
                          f(grid.at(grid.z, i, jm))) / ht2;
            double dks = (grid.at(grid.k, i + 1, j) - grid.at(grid.k, i - 1, j)) /
                         (2.0 * grid.hs);
            double r = lap + dks;
            out.field[std::size_t(i - 1) * grid.nt + j] = r;
            out.max_norm = std::max(out.max_norm, std::abs(r));
        }
    return out;
}

MinimumPrincipleResult minimum_principle_check(const FloerGrid& grid,
                                               double residual_threshold) {
    MinimumPrincipleResult out;
    FloerResidual res = discrete_floer_residual(grid);
    if (res.max_norm > residual_threshold) return out;  // not applicable
    out.applicable = true;

    auto f = [&](double z) {
        if (grid.order == 1) return std::log(std::abs(z));
        return -1.0 / (double(grid.order - 1) * ipow(z, grid.order - 1));
    };
    double vmin = 1e300, vmax = -1e300;
    for (int i = 0; i <= grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            double v = f(grid.at(grid.z, i, j));
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (vmax - vmin < 1e-12) {
        out.constant_branch = true;
        out.holds = true;
        return out;
    }
    double bmin = 1e300, bmax = -1e300;
    for (int j = 0; j < grid.nt; ++j)
        for (int i : {0, grid.ns}) {
            double v = f(grid.at(grid.z, i, j));
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
        }
    out.holds = true;
    const double tol = 1e-12;
    for (int i = 1; i < grid.ns && out.holds; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            double v = f(grid.at(grid.z, i, j));
            if (v < bmin - tol || v > bmax + tol) {
                out.holds = false;
                out.witness = {i, j};
                break;
            }
        }
    return out;
}

}  // namespace bsing
