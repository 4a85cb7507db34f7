#include <doctest.h>

#include <stdexcept>

#include <numbers>

#include "bsing/json_io.hpp"

using namespace bsing;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

BSurface sample_surface() {
    BSurface s;
    SurfaceComponent a, b;
    a.id = "A";
    a.genus = 1;
    a.boundary = {{"c", Side::pos}};
    a.chart = ChartKind::flat_torus;
    a.chart_period_1 = kTau;
    a.chart_period_2 = kTau;
    b.id = "B";
    b.boundary = {{"c", Side::neg}};
    s.components = {a, b};

    CriticalCircle c;
    c.id = "c";
    c.order = 2;
    c.theta_period = kTau;
    TrigPoly a1(0.1, kTau), a2(1.0, kTau);
    a1.sin_coeffs = {0.2};
    a2.cos_coeffs = {0.3, -0.05};
    c.laurent_coeffs = {a1, a2};
    c.epsilon = 0.3;
    c.neg_side = "B";
    c.pos_side = "A";
    s.circles = {c};
    return s;
}

}  // namespace

TEST_CASE("trig polynomial round trip and bare-number shorthand") {
    TrigPoly p(0.7, kTau);
    p.cos_coeffs = {0.1, 0.0, -0.4};
    p.sin_coeffs = {1.5};
    TrigPoly q = trigpoly_from_json(trigpoly_to_json(p));
    CHECK(q.period == doctest::Approx(p.period));
    for (double th : {0.0, 1.0, 2.2, 5.1})
        CHECK(q.eval(th) == doctest::Approx(p.eval(th)).epsilon(1e-15));

    TrigPoly c = trigpoly_from_json(json(2.5), 3.0);
    CHECK(c.eval(1.0) == doctest::Approx(2.5));
    CHECK(c.period == doctest::Approx(3.0));

    CHECK_THROWS_AS((void)trigpoly_from_json(json::array({1, 2})), std::invalid_argument);
    json zero_period = {{"period", 0.0}, {"const", 1.0}};
    CHECK_THROWS_AS((void)trigpoly_from_json(zero_period), std::invalid_argument);
}

TEST_CASE("profile round trip; a bare polynomial is an autonomous profile") {
    TimeSpaceProfile p;
    TrigPoly tau(0.0, 1.0);
    tau.cos_coeffs = {1.0};
    TrigPoly eta(0.2, kTau);
    eta.sin_coeffs = {0.4};
    p.terms.push_back({tau, eta});
    p.terms.push_back({TrigPoly::constant(1.0, 1.0), TrigPoly::constant(0.3, kTau)});

    TimeSpaceProfile q = profile_from_json(profile_to_json(p), kTau);
    for (double t : {0.0, 0.3, 0.8})
        for (double th : {0.5, 2.0, 4.4})
            CHECK(q.eval(t, th) == doctest::Approx(p.eval(t, th)).epsilon(1e-15));

    json bare = {{"period", kTau}, {"sin", {0.5}}};
    TimeSpaceProfile autonomous = profile_from_json(bare, kTau);
    REQUIRE(autonomous.terms.size() == 1);
    CHECK(autonomous.eval(0.1, 1.0) == doctest::Approx(autonomous.eval(0.9, 1.0)));
}

TEST_CASE("surface round trip preserves structure and values") {
    BSurface s = sample_surface();
    BSurface r = surface_from_json(surface_to_json(s));
    REQUIRE(r.components.size() == 2);
    REQUIRE(r.circles.size() == 1);
    CHECK(r.components[0].genus == 1);
    CHECK(r.components[0].chart == ChartKind::flat_torus);
    CHECK(r.components[0].chart_period_1 == doctest::Approx(kTau));
    CHECK(r.circles[0].order == 2);
    CHECK(r.circles[0].neg_side == "B");
    for (double th : {0.3, 2.8})
        CHECK(r.circles[0].laurent_coeffs[1].eval(th) ==
              doctest::Approx(s.circles[0].laurent_coeffs[1].eval(th)).epsilon(1e-15));
}

TEST_CASE("surface parsing rejects bad sides and dangling references") {
    json j = surface_to_json(sample_surface());
    json bad_side = j;
    bad_side["components"][0]["boundary"][0][1] = "up";
    CHECK_THROWS_AS((void)surface_from_json(bad_side), std::invalid_argument);

    json dangling = j;
    dangling["circles"][0]["pos"] = "missing";
    CHECK_THROWS_AS((void)surface_from_json(dangling), std::invalid_argument);

    json bad_chart = j;
    bad_chart["components"][0]["chart"] = "hyperbolic";
    CHECK_THROWS_AS((void)surface_from_json(bad_chart), std::invalid_argument);
}

TEST_CASE("graph round trip and validation") {
    BGraph g;
    g.vertices = {{"u", 2}, {"v", 0}};
    g.edges = {{"e", "u", "v"}};
    BGraph r = graph_from_json(graph_to_json(g));
    CHECK(r.vertices.size() == 2);
    CHECK(r.find_vertex("u")->genus == 2);
    CHECK(r.edges[0].a == "u");

    json orphan = graph_to_json(g);
    orphan["edges"][0]["b"] = "w";
    CHECK_THROWS_AS((void)graph_from_json(orphan), std::invalid_argument);
}

TEST_CASE("Hamiltonian round trip against its surface") {
    BSurface s = sample_surface();
    AdmissibleHamiltonian h;
    TrigPoly k(0.5, 1.0);
    k.sin_coeffs = {0.1};
    h.per_circle["c"] = k;
    TrigPoly eta(0.0, kTau);
    eta.cos_coeffs = {0.2};
    h.per_component["A"] = TimeSpaceProfile(eta);
    h.collar_h["c"] = TimeSpaceProfile(eta);

    AdmissibleHamiltonian r = hamiltonian_from_json(hamiltonian_to_json(h), s);
    CHECK(r.k("c").eval(0.25) == doctest::Approx(k.eval(0.25)).epsilon(1e-15));
    CHECK(r.per_component.at("A").eval(0.1, 2.0) ==
          doctest::Approx(h.per_component.at("A").eval(0.1, 2.0)).epsilon(1e-15));
    CHECK(r.collar_profile("c").eval(0.1, 2.0) ==
          doctest::Approx(eta.eval(2.0)).epsilon(1e-15));

    json unknown = hamiltonian_to_json(h);
    unknown["circles"]["ghost"] = {{"k", 1.0}};
    CHECK_THROWS_WITH_AS((void)hamiltonian_from_json(unknown, s),
                         doctest::Contains("unknown circle"), std::invalid_argument);
}
