#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsing/geometry.hpp"
#include "bsing/morse.hpp"

using namespace bsing;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

CriticalCircle circle_between(const char* id, const char* neg, const char* pos,
                              int order) {
    CriticalCircle c;
    c.id = id;
    c.order = order;
    c.theta_period = kTau;
    for (int i = 1; i < order; ++i)
        c.laurent_coeffs.push_back(TrigPoly::constant(0.0, kTau));
    c.laurent_coeffs.push_back(TrigPoly::constant(1.0, kTau));
    c.epsilon = 0.4;
    c.neg_side = neg;
    c.pos_side = pos;
    return c;
}

BSurface equator_sphere(int order) {
    BSurface s;
    SurfaceComponent a, b;
    a.id = "A";
    a.boundary = {{"c", Side::pos}};
    b.id = "B";
    b.boundary = {{"c", Side::neg}};
    s.components = {a, b};
    s.circles = {circle_between("c", "B", "A", order)};
    return s;
}

BSurface triangle_surface(int order) {
    BSurface s;
    SurfaceComponent a, b, c;
    a.id = "A";
    a.boundary = {{"ab", Side::pos}, {"ca", Side::neg}};
    b.id = "B";
    b.boundary = {{"ab", Side::neg}, {"bc", Side::pos}};
    c.id = "C";
    c.boundary = {{"bc", Side::neg}, {"ca", Side::pos}};
    s.components = {a, b, c};
    s.circles = {circle_between("ab", "B", "A", order),
                 circle_between("bc", "C", "B", order),
                 circle_between("ca", "A", "C", order)};
    return s;
}

BSurface torus_with_disk(int order) {
    BSurface s;
    SurfaceComponent v, d;
    v.id = "V";
    v.genus = 1;
    v.boundary = {{"c", Side::pos}};
    d.id = "D";
    d.boundary = {{"c", Side::neg}};
    s.components = {v, d};
    s.circles = {circle_between("c", "D", "V", order)};
    return s;
}

FloerGrid manufactured(int n, double amp) {
    double h = 1.0 / double(n);
    FloerGrid grid = FloerGrid::make(n, n, h, h, 1, 1.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = h * double(i), t = h * double(j);
            double phi = amp * std::sin(2.0 * pi * t) * std::sin(pi * s);
            grid.at(grid.z, i, j) = 0.3 * std::exp(phi);
            grid.at(grid.k, i, j) =
                -5.0 * pi * amp * std::sin(2.0 * pi * t) * std::cos(pi * s);
        }
    return grid;
}

}  // namespace

TEST_CASE("perfect inventories and the Euler identity") {
    for (int g : {0, 1, 2}) {
        CAPTURE(g);
        CriticalInventory inv = perfect_morse_inventory(g);
        CHECK(inv.c_min == 1);
        CHECK(inv.c_saddle == 2 * g);
        CHECK(inv.c_max == 1);
        CHECK(euler_identity_check(inv, g));
        CHECK_FALSE(euler_identity_check(inv, g + 1));
    }
    // torus positions: max at the origin, min at the opposite corner
    CriticalInventory t = perfect_morse_inventory(1);
    REQUIRE(t.positions_max.size() == 1);
    REQUIRE(t.positions_min.size() == 1);
    CHECK(std::hypot(t.positions_max[0][0], t.positions_max[0][1]) < 1e-12);

    CriticalInventory bad;
    bad.c_min = 2;
    bad.c_max = 1;
    CHECK_FALSE(euler_identity_check(bad, 0));
}

TEST_CASE("lower-bound arithmetic across degree and genus") {
    for (int deg = 1; deg <= 5; ++deg)
        for (int g = 0; g <= 3; ++g) {
            CAPTURE(deg);
            CAPTURE(g);
            int expect = deg >= 2 ? 2 * deg + 2 * g - 2 : 2 * g + 2;
            CHECK(morse_inequality_bound(deg, g) == expect);
        }
    // explicit extrema count overrides the degree default
    CHECK(morse_inequality_bound(3, 1, 5) == 10);
    CHECK(morse_inequality_bound(1, 1) == 4);
}

TEST_CASE("GF(2) homology of small complexes") {
    ChainComplexGF2 torus;
    torus.counts = {1, 2, 1};
    torus.d1 = {{0, 0}};
    torus.d2 = {{0}, {0}};
    CHECK(homology_gf2(torus) == std::array<int, 3>{1, 2, 1});

    ChainComplexGF2 collapse;
    collapse.counts = {1, 1, 1};
    collapse.d1 = {{1}};
    collapse.d2 = {{1}};
    CHECK_FALSE(collapse.boundary_squares_to_zero());
    CHECK_THROWS_AS((void)homology_gf2(collapse), std::invalid_argument);

    ChainComplexGF2 shape;
    shape.counts = {2, 1, 0};
    shape.d1 = {{1}};  // needs 2 rows
    CHECK_THROWS_AS((void)homology_gf2(shape), std::invalid_argument);
}

TEST_CASE("double-well sphere model has the sphere homology") {
    ChainComplexGF2 c = sphere_model_complex();
    CHECK(c.counts == std::array<int, 3>{2, 1, 1});
    CHECK(c.boundary_squares_to_zero());
    CHECK(homology_gf2(c) == std::array<int, 3>{1, 0, 1});
}

TEST_CASE("optimal construction realizes the graph bound exactly") {
    for (int order : {1, 2}) {
        for (const BSurface& s :
             {equator_sphere(order), torus_with_disk(order)}) {
            CAPTURE(order);
            CAPTURE(s.components[0].id);
            OptimalConstruction oc = optimal_b_function(s, order);
            CHECK(oc.total_expected == arnold_bound_surface(build_graph(s)));
            if (order % 2 == 1)
                CHECK(oc.edge_signs.has_value());
            else
                CHECK(oc.orientation.has_value());

            int total = 0;
            for (const auto& v : oc.vertices) {
                const SurfaceComponent* comp = s.find_component(v.vertex_id);
                REQUIRE(comp);
                int g = comp->genus, d = comp->degree();
                CHECK(euler_identity_check(v.inventory, g));
                CHECK(v.expected_interior == 2 * g + std::abs(d - 2));
                CHECK(v.inventory.total() ==
                      (d <= 1 ? 2 + 2 * g : 2 + 2 * g + 2 * (d - 2)));
                CHECK((int)v.inventory.disk_signs.size() == d);
                total += v.expected_interior;
            }
            CHECK(total == oc.total_expected);
        }
    }
}

TEST_CASE("odd order on an odd cycle fails with a witness; even order succeeds") {
    BSurface tri1 = triangle_surface(1);
    CHECK_THROWS_WITH_AS((void)optimal_b_function(tri1, 1),
                         doctest::Contains("odd cycle"), std::invalid_argument);

    BSurface tri2 = triangle_surface(2);
    OptimalConstruction oc = optimal_b_function(tri2, 2);
    REQUIRE(oc.orientation.has_value());
    CHECK(oc.total_expected == 0);  // three degree-2 vertices
    for (const auto& v : oc.vertices) {
        bool has_max = false, has_min = false;
        for (const auto& [cid, sign] : v.inventory.disk_signs)
            (sign > 0 ? has_max : has_min) = true;
        CHECK(has_max);
        CHECK(has_min);
    }
}

TEST_CASE("discrete Floer residual: exact solution, convergence, controls") {
    // translation-invariant cylinder solves the equation exactly
    FloerGrid flat = FloerGrid::make(40, 40, 1.0 / 40, 1.0 / 40, 1, 1.0);
    CHECK(discrete_floer_residual(flat).max_norm < 1e-14);

    FloerGrid g1 = manufactured(100, 2e-5);
    FloerGrid g2 = manufactured(200, 2e-5);
    double r1 = discrete_floer_residual(g1).max_norm;
    double r2 = discrete_floer_residual(g2).max_norm;
    CHECK(r1 < 1e-6);
    CHECK(std::log2(r1 / r2) > 1.8);

    // non-solution: linear drift in z with k frozen
    FloerGrid bad = FloerGrid::make(100, 100, 1e-2, 1e-2, 1, 1.0);
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j < 100; ++j) bad.at(bad.z, i, j) = 0.3 + 0.1 * (i / 100.0);
    CHECK(discrete_floer_residual(bad).max_norm > 1e-2);

    // a stencil point outside the collar band is an error, not a number
    FloerGrid out = FloerGrid::make(10, 10, 0.1, 0.1, 1, 1.0);
    out.at(out.z, 5, 5) = 2.0;
    CHECK_THROWS_AS((void)discrete_floer_residual(out), std::runtime_error);
}

TEST_CASE("minimum principle: constant, monotone and violating grids") {
    FloerGrid flat = FloerGrid::make(20, 20, 0.05, 0.05, 1, 1.0);
    MinimumPrincipleResult mp = minimum_principle_check(flat, 1e-5);
    CHECK(mp.applicable);
    CHECK(mp.holds);
    CHECK(mp.constant_branch);

    // monotone in s: extrema on the boundary rows (forced applicable)
    FloerGrid mono = FloerGrid::make(20, 20, 0.05, 0.05, 1, 1.0);
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j < 20; ++j) mono.at(mono.z, i, j) = 0.3 + 0.1 * (i / 20.0);
    MinimumPrincipleResult m2 = minimum_principle_check(mono, 1e9);
    CHECK(m2.applicable);
    CHECK(m2.holds);
    CHECK_FALSE(m2.constant_branch);

    // interior bump: violated, with a witness cell
    FloerGrid bump = mono;
    bump.at(bump.z, 10, 7) = 0.9;
    MinimumPrincipleResult m3 = minimum_principle_check(bump, 1e9);
    CHECK(m3.applicable);
    CHECK_FALSE(m3.holds);
    CHECK(m3.witness.first == 10);
    CHECK(m3.witness.second == 7);

    // large residual: the check refuses to certify anything
    MinimumPrincipleResult m4 = minimum_principle_check(bump, 1e-12);
    CHECK_FALSE(m4.applicable);
}
