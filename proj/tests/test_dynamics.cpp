#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "bsing/dynamics.hpp"

using namespace bsing;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

CriticalCircle flat_circle(double a1, double eps = 0.4) {
    CriticalCircle c;
    c.id = "c";
    c.order = 1;
    c.theta_period = kTau;
    c.laurent_coeffs = {TrigPoly::constant(a1, kTau)};
    c.epsilon = eps;
    c.neg_side = "B";
    c.pos_side = "A";
    return c;
}

TimeSpaceProfile random_profile(std::mt19937& rng, bool time_modulated) {
    std::uniform_real_distribution<double> u(-0.08, 0.08);
    TrigPoly eta(0.0, kTau);
    eta.cos_coeffs = {u(rng), u(rng)};
    eta.sin_coeffs = {u(rng)};
    TimeSpaceProfile h(eta);
    if (time_modulated) {
        TrigPoly tau(0.0, 1.0);
        tau.sin_coeffs = {u(rng)};
        TrigPoly eta2(0.0, kTau);
        eta2.sin_coeffs = {u(rng), u(rng)};
        h.terms.push_back({tau, eta2});
    }
    return h;
}

}  // namespace

TEST_CASE("closed-form order-1 collar flow agrees with adaptive RK") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.5, 2.0), uk(0.3, 4.0), uz(0.05, 0.15),
        uth(0.0, kTau);
    for (int trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        CriticalCircle circle = flat_circle(ua(rng));
        TrigPoly k = TrigPoly::constant(uk(rng), 1.0);
        TimeSpaceProfile h = random_profile(rng, trial % 2 == 1);
        Vec2 x0{(trial % 3 ? 1.0 : -1.0) * uz(rng), uth(rng)};

        Vec2 exact = collar_flow_closed_form(circle, k, h, x0, 1.0);
        CollarField field(circle, k, h);
        FlowPath path = integrate(field, x0, 1.0, 1e-12);
        REQUIRE_FALSE(path.aborted);
        Vec2 rk = path.points.back().second;
        CHECK(std::abs(rk[0] - exact[0]) < 1e-8);
        double dth = std::remainder(rk[1] - exact[1], kTau);
        CHECK(std::abs(dth) < 1e-8);
    }
}

TEST_CASE("closed form rejects unsupported collars") {
    CriticalCircle c2 = flat_circle(1.0);
    c2.order = 2;
    c2.laurent_coeffs = {TrigPoly::constant(0.0, kTau), TrigPoly::constant(1.0, kTau)};
    TrigPoly k = TrigPoly::constant(1.0, 1.0);
    CHECK_THROWS_AS(collar_flow_closed_form(c2, k, {}, {0.1, 0.0}, 1.0),
                    std::invalid_argument);
    TrigPoly wavy_k(1.0, 1.0);
    wavy_k.sin_coeffs = {0.3};
    CHECK_THROWS_AS(collar_flow_closed_form(flat_circle(1.0), wavy_k, {}, {0.1, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("autonomous energy is conserved along RK paths") {
    std::mt19937 rng(23);
    CriticalCircle circle = flat_circle(1.3);
    TrigPoly k = TrigPoly::constant(2.0, 1.0);
    TimeSpaceProfile h = random_profile(rng, false);
    CollarField field(circle, k, h);
    Vec2 x0{0.2, 1.0};
    auto H0 = field.hamiltonian(x0);
    REQUIRE(H0);
    FlowPath path = integrate(field, x0, 1.0, 1e-12);
    REQUIRE_FALSE(path.aborted);
    for (const auto& [t, x] : path.points) {
        auto Ht = field.hamiltonian(x);
        REQUIRE(Ht);
        CHECK(std::abs(*Ht - *H0) < 1e-8);
    }
}

TEST_CASE("analytic Jacobians agree with finite differences") {
    std::mt19937 rng(5);
    CriticalCircle circle = flat_circle(1.1);
    circle.laurent_coeffs[0].sin_coeffs = {0.2};
    TrigPoly k = TrigPoly::constant(1.5, 1.0);
    CollarField collar(circle, k, random_profile(rng, true));

    PlanarLogField logf;
    logf.lambda = 0.3;
    logf.poles = {{0.4, 0.0}, {-0.3, 0.2}};
    logf.signs = {1.0, 1.0};

    TorusTrigField torus;

    const ChartField* fields[] = {&collar, &logf, &torus};
    Vec2 points[] = {{0.15, 2.0}, {0.9, -0.7}, {1.1, 2.4}};
    for (int fi = 0; fi < 3; ++fi) {
        CAPTURE(fi);
        const ChartField& f = *fields[fi];
        Vec2 x = points[fi];
        Mat2 J = f.jacobian(0.3, x);
        double d = 1e-6;
        for (int col = 0; col < 2; ++col) {
            Vec2 xp = x, xm = x;
            xp[col] += d;
            xm[col] -= d;
            Vec2 vp = f.velocity(0.3, xp), vm = f.velocity(0.3, xm);
            for (int row = 0; row < 2; ++row) {
                double fd = (vp[row] - vm[row]) / (2.0 * d);
                double scale = std::max(1.0, std::abs(fd));
                CHECK(std::abs(J[row][col] - fd) / scale < 1e-4);
            }
        }
    }
}

TEST_CASE("time-1 map of a rigid rotation is the exact rotation matrix") {
    PlanarRotationField f;
    f.rate = TrigPoly(1.0, 1.0);
    f.rate.sin_coeffs = {0.5};  // angle = integral of rate over [0,1] = 1
    TimeOneMap m = time_one_map(f, {0.3, 0.1});
    double a = 1.0;
    CHECK(m.image[0] == doctest::Approx(0.3 * std::cos(a) - 0.1 * std::sin(a)).epsilon(1e-9));
    CHECK(m.image[1] == doctest::Approx(0.3 * std::sin(a) + 0.1 * std::cos(a)).epsilon(1e-9));
    CHECK(m.jacobian[0][0] == doctest::Approx(std::cos(a)).epsilon(1e-8));
    CHECK(m.jacobian[1][0] == doctest::Approx(std::sin(a)).epsilon(1e-8));
}

TEST_CASE("variational Jacobian matches finite differences of the map") {
    std::mt19937 rng(31);
    CriticalCircle circle = flat_circle(1.2);
    TrigPoly k = TrigPoly::constant(1.0, 1.0);
    CollarField field(circle, k, random_profile(rng, true));
    Vec2 x{0.18, 0.9};
    TimeOneMap m = time_one_map(field, x);
    double d = 1e-6;
    for (int col = 0; col < 2; ++col) {
        Vec2 xp = x, xm = x;
        xp[col] += d;
        xm[col] -= d;
        TimeOneMap mp = time_one_map(field, xp), mm = time_one_map(field, xm);
        for (int row = 0; row < 2; ++row) {
            double fd = (mp.image[row] - mm.image[row]) / (2.0 * d);
            CHECK(std::abs(m.jacobian[row][col] - fd) < 1e-4);
        }
    }
}

TEST_CASE("finder: single elliptic orbit of a rotation disk, graded as a minimum") {
    PlanarRotationField f;
    f.rate = TrigPoly::constant(1.0, 1.0);
    f.r_max = 1.0;
    OrbitSearch os = find_periodic_orbits(f, 24);
    REQUIRE(os.orbits.size() == 1);
    const OrbitRecord& o = os.orbits[0];
    CHECK(std::hypot(o.point[0], o.point[1]) < 1e-8);
    CHECK(o.nondegenerate);
    CHECK(o.det == doctest::Approx(2.0 - 2.0 * std::cos(1.0)).epsilon(1e-6));
    CHECK(o.index_supported);
    CHECK(o.index == 1);
}

TEST_CASE("finder: hyperbolic fixed point without a Hamiltonian") {
    LinearSaddleField f;
    OrbitSearch os = find_periodic_orbits(f, 16);
    REQUIRE(os.orbits.size() == 1);
    CHECK(std::hypot(os.orbits[0].point[0], os.orbits[0].point[1]) < 1e-8);
    CHECK_FALSE(os.orbits[0].index_supported);
    CHECK(os.orbits[0].nondegenerate);
}

TEST_CASE("k integral in T*Z produces a flagged degenerate family") {
    CriticalCircle circle = flat_circle(1.0);
    TrigPoly k = TrigPoly::constant(kTau, 1.0);  // theta advances a full period
    CollarField field(circle, k, {});
    OrbitSearch os = find_periodic_orbits(field, 24);
    CHECK(os.degenerate_family_flagged);
    CHECK(os.orbits.empty());
}

TEST_CASE("roots of F: autonomous term yields the identically-zero sentinel") {
    std::mt19937 rng(41);
    CriticalCircle circle = flat_circle(1.0);
    TrigPoly k = TrigPoly::constant(kTau, 1.0);
    RootsOfF r = roots_of_F(circle, k, random_profile(rng, false));
    CHECK(r.identically_zero);
}

TEST_CASE("roots of F: time-modulated term, roots cross-checked by dense scan") {
    CriticalCircle circle = flat_circle(1.0);
    TrigPoly k = TrigPoly::constant(kTau, 1.0);
    TimeSpaceProfile h;
    TrigPoly tau(0.0, 1.0);
    tau.cos_coeffs = {1.0};
    TrigPoly eta(0.0, kTau);
    eta.sin_coeffs = {0.7};
    h.terms.push_back({tau, eta});
    RootsOfF r = roots_of_F(circle, k, h);
    REQUIRE_FALSE(r.identically_zero);
    CHECK_FALSE(r.roots.empty());

    // oracle: F(theta0) by Simpson in t, sign changes on a dense theta grid
    auto F = [&](double th0) {
        int n = 2000;
        double T1 = 1.0, acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            double t = T1 * i / n;
            double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * h.dtheta(t, th0 + kTau * t);
        }
        return acc * (T1 / n) / 3.0;
    };
    int oracle_roots = 0;
    int n = 4096;
    for (int i = 0; i < n; ++i) {
        double t0 = kTau * i / n, t1 = kTau * (i + 1) / n;
        if (F(t0) == 0.0 || (F(t0) < 0) != (F(t1) < 0)) ++oracle_roots;
    }
    CHECK((int)r.roots.size() == oracle_roots);
    for (double th0 : r.roots) CHECK(std::abs(F(th0)) < 1e-6);
}
