#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsing/charts.hpp"
#include "bsing/geometry.hpp"
#include "bsing/graph.hpp"

namespace bsing {

/// Critical-point counts of a closed-surface construction, with chart
/// positions when explicit (g <= 1) and the max/min placement of each glued
/// disk. Grading convention: min <-> +1, saddle <-> 0, max <-> -1 (the raw
/// Morse index is 1 minus the grading).
struct CriticalInventory {
    std::string component_id;
    int c_min = 0, c_saddle = 0, c_max = 0;
    std::vector<Vec2> positions_min, positions_saddle, positions_max;
    std::vector<std::pair<std::string, int>> disk_signs;  // circle id -> +1 max / -1 min

    int total() const { return c_min + c_saddle + c_max; }
};

/// (1, 2g, 1); explicit flat-model positions for g in {0, 1}.
CriticalInventory perfect_morse_inventory(int g);

/// c_min - c_saddle + c_max == 2 - 2g.
bool euler_identity_check(const CriticalInventory& inv, int g);

/// Lower bound for the total closed-model orbit count of a degree-deg,
/// genus-g vertex carrying at least c_extrema_min extrema:
/// max(2*c_extrema_min + 2g - 2, 2g + 2); c_extrema_min defaults to
/// max(deg, 2) (every closed surface has a max and a min).
int morse_inequality_bound(int deg, int g, int c_extrema_min = -1);

/// GF(2) Morse chain complex over raw indices 0 (min), 1 (saddle), 2 (max).
struct ChainComplexGF2 {
    std::array<int, 3> counts{};
    // d1[i][j] = coefficient of min i in the boundary of saddle j
    std::vector<std::vector<std::uint8_t>> d1;
    // d2[j][l] = coefficient of saddle j in the boundary of max l
    std::vector<std::vector<std::uint8_t>> d2;

    bool boundary_squares_to_zero() const;
};

/// Betti numbers (b0, b1, b2) over GF(2) by Gaussian elimination.
/// Throws std::invalid_argument when d1*d2 != 0.
std::array<int, 3> homology_gf2(const ChainComplexGF2& c);

/// Complex of the double-well sphere model F = (x^2-1)^2 + y^2 plus the
/// point at infinity; the boundary of the saddle is found by shooting
/// gradient descent along its unstable directions, the boundary of the max
/// by counting ascents to infinity along the stable ones. Homology (1,0,1).
ChainComplexGF2 sphere_model_complex();

/// One vertex of the optimal construction: closed-model inventory (disk
/// points included) plus the explicit interior chart when g <= 1.
struct VertexConstruction {
    std::string vertex_id;
    int genus = 0, degree = 0;
    CriticalInventory inventory;
    std::shared_ptr<ChartField> interior;  // null for genus >= 2
    int expected_interior = 0;             // 2g + |deg - 2|
};

struct OptimalConstruction {
    int order = 1;
    std::optional<SignAssignment> edge_signs;    // odd order
    std::optional<EdgeOrientation> orientation;  // even order
    std::vector<VertexConstruction> vertices;
    int total_expected = 0;  // = arnold_bound_surface of the graph
};

/// Optimal b-function data: edge 2-coloring (odd order; throws
/// std::invalid_argument with the odd-cycle witness when none exists) or a
/// good orientation (even order), per-vertex inventories with
/// 2 + 2g (deg <= 1) resp. 2 + 2g + 2(deg-2) critical points of which deg
/// sit in glued disks, and interior models realizing 2g + |deg-2| orbits.
OptimalConstruction optimal_b_function(const BSurface& s, int order);

/// Rectangular (s, t) grid holding a map u = (z, theta) into a collar chart
/// and the Hamiltonian profile k(s, t). s rows 0..ns (two boundary rows),
/// t columns 0..nt-1, periodic in t.
struct FloerGrid {
    int ns = 0, nt = 0;
    double hs = 0.0, ht = 0.0;
    int order = 1;          // collar transverse order (selects f)
    double eps = 1.0;       // collar half-width
    double z_floor = 0.0;
    std::vector<double> z, theta, k;  // row-major, (ns+1) * nt entries

    double& at(std::vector<double>& v, int i, int j);
    double at(const std::vector<double>& v, int i, int j) const;
    static FloerGrid make(int ns, int nt, double hs, double ht, int order, double eps);
};

struct FloerResidual {
    std::vector<double> field;  // (ns-1) * nt interior values
    double max_norm = 0.0;
    int ns = 0, nt = 0;
};

/// Residual of the discrete Laplace identity: 5-point Laplacian of f(z(s,t))
/// plus the central s-derivative of k. f = log|z| (order 1) or
/// -1/((order-1) z^{order-1}). Throws std::runtime_error when a stencil
/// point leaves the collar band (z_floor < |z| < eps).
FloerResidual discrete_floer_residual(const FloerGrid& grid);

struct MinimumPrincipleResult {
    bool applicable = false;  // residual below threshold
    bool holds = false;
    bool constant_branch = false;          // f(z) constant: vacuously true
    std::pair<int, int> witness{-1, -1};  // interior extremum cell on violation
};

/// Extrema of f(z(s,t)) must occur on the boundary rows unless constant.
MinimumPrincipleResult minimum_principle_check(const FloerGrid& grid,
                                               double residual_threshold = 1e-6);

}  // namespace bsing
