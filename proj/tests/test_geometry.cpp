#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "bsing/geometry.hpp"
#include "bsing/graph.hpp"

using namespace bsing;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

CriticalCircle wobbly_circle() {
    CriticalCircle c;
    c.id = "c";
    c.order = 2;
    c.theta_period = 2.0 * std::numbers::pi;
    TrigPoly a1(0.1, c.theta_period), a2(1.3, c.theta_period);
    a1.sin_coeffs = {0.2};
    a2.cos_coeffs = {0.4, -0.1};
    c.laurent_coeffs = {a1, a2};
    c.epsilon = 0.3;
    c.neg_side = "B";
    c.pos_side = "A";
    return c;
}

}  // namespace

TEST_CASE("collar form evaluation and singularity") {
    CriticalCircle c = wobbly_circle();
    double z = 0.07, th = 1.2;
    double expect = c.laurent_coeffs[0].eval(th) / z + c.laurent_coeffs[1].eval(th) / (z * z);
    CHECK(eval_collar_form(c, z, th) == doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS(eval_collar_form(c, 0.0, th), std::domain_error);
}

TEST_CASE("modular weight equals the quadrature of the top coefficient") {
    CriticalCircle c = wobbly_circle();
    double oracle =
        simpson([&](double th) { return c.laurent_coeffs[1].eval(th); }, 0.0, c.theta_period);
    CHECK(modular_weight(c) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("normalization is the identity for constant top coefficient") {
    CriticalCircle c = wobbly_circle();
    c.laurent_coeffs[1] = TrigPoly::constant(1.3, c.theta_period);
    NormalizedCollar n = normalize_collar(c);
    CHECK_FALSE(n.reparametrized);
    CHECK(n.circle.theta_period == doctest::Approx(c.theta_period));
}

TEST_CASE("normalization makes the top coefficient constant and preserves the form") {
    CriticalCircle c = wobbly_circle();
    NormalizedCollar n = normalize_collar(c);
    REQUIRE(n.reparametrized);
    CHECK(n.circle.a_top().is_constant(1e-8));
    // new period = modular weight (area preservation)
    CHECK(n.circle.theta_period == doctest::Approx(std::abs(modular_weight(c))).epsilon(1e-10));
    // phi and its inverse really invert each other
    for (double th : {0.0, 1.0, 3.0, 5.5})
        CHECK(n.phi_inverse(n.phi(th)) == doctest::Approx(th).epsilon(1e-8));
    // coefficient transformation law a_i(theta) = a_i'(phi(theta)) * phi'(theta)
    for (double th : {0.4, 2.1, 4.4}) {
        double d = 1e-6;
        double dphi = (n.phi(th + d) - n.phi(th - d)) / (2.0 * d);
        for (int i = 0; i < 2; ++i) {
            double lhs = c.laurent_coeffs[i].eval(th);
            double rhs = n.circle.laurent_coeffs[i].eval(n.phi(th)) * dphi;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
        }
    }
}

TEST_CASE("surface validation and graph extraction") {
    BSurface s;
    SurfaceComponent a, b;
    a.id = "A";
    a.genus = 1;
    a.boundary = {{"c", Side::pos}};
    b.id = "B";
    b.boundary = {{"c", Side::neg}};
    s.components = {a, b};
    s.circles = {wobbly_circle()};
    s.validate();

    BGraph g = build_graph(s);
    CHECK(g.vertices.size() == 2);
    CHECK(g.edges.size() == 1);
    CHECK(g.find_vertex("A")->genus == 1);
    CHECK(g.edges[0].a == "B");
    CHECK(g.edges[0].b == "A");

    // a dangling reference must be rejected
    s.circles[0].pos_side = "missing";
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
