#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsing/geometry.hpp"
#include "bsing/trigpoly.hpp"

namespace bsing {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// A 2d chart with a (possibly time-dependent) vector field on it. The orbit
/// finder, the time-1 map and the agreement checks all work against this
/// interface; each implementation supplies an analytic Jacobian.
struct ChartField {
    std::string chart_id = "chart";

    virtual ~ChartField() = default;
    virtual Vec2 velocity(double t, const Vec2& x) const = 0;
    virtual Mat2 jacobian(double t, const Vec2& x) const = 0;
    virtual bool in_domain(const Vec2& x) const { return true; }
    /// Period of each coordinate (0 = non-periodic).
    virtual Vec2 periods() const { return {0.0, 0.0}; }
    /// Autonomous Hamiltonian value, when one is available (used for energy
    /// conservation oracles and Morse-index classification).
    virtual std::optional<double> hamiltonian(const Vec2& x) const { return std::nullopt; }
    /// Bounding box {xmin, xmax, ymin, ymax} for orbit-search seeding.
    virtual std::array<double, 4> seed_box() const = 0;
};

/// Collar field in (z, theta):
///   dz/dt = -z^m h_theta(t,theta) / S,   dtheta/dt = k(t) / S,
/// with S = sum a_i(theta) z^{m-i}. Integration aborts at |z| < z_floor.
struct CollarField final : ChartField {
    CriticalCircle circle;
    TrigPoly k;           // period 1
    TimeSpaceProfile h;   // collar restriction of the interior term
    double z_floor = 0.0;
    // precomputed derivatives (the finder calls the field in a tight loop)
    TimeSpaceProfile h_th, h_th2;
    std::vector<TrigPoly> a_prime;

    CollarField(CriticalCircle c, TrigPoly kk, TimeSpaceProfile hh);

    double S(double z, double theta) const;
    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    bool in_domain(const Vec2& x) const override;
    Vec2 periods() const override { return {0.0, circle.theta_period}; }
    std::optional<double> hamiltonian(const Vec2& x) const override;
    std::array<double, 4> seed_box() const override;
};

/// Rigid rotation about the origin with time profile `rate`:
///   velocity = rate(t) * (-y, x);  Hamiltonian (autonomous rate c):
///   weight * c * (x^2+y^2)/2 for area form weight*dx^dy.
struct PlanarRotationField final : ChartField {
    TrigPoly rate;        // period 1
    double weight = 1.0;  // symplectic area density
    double r_min = 0.0, r_max = 1.0;

    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    bool in_domain(const Vec2& x) const override;
    std::optional<double> hamiltonian(const Vec2& x) const override;
    std::array<double, 4> seed_box() const override;
};

/// Harmonic-log planar model F = lambda * sum sigma_i log|w - p_i| with
/// omega = dx^dy; level sets of F are flow lines, the domain is a level band
/// {level_lo <= F/lambda' ...} clipped away from the poles. Critical points
/// are the zeros of sum sigma_i/(w - p_i): exactly (#poles - 1) saddles for
/// uniform signs, all nondegenerate for generic pole positions.
struct PlanarLogField final : ChartField {
    double lambda = 1.0;
    std::vector<Vec2> poles;
    std::vector<double> signs;  // sigma_i = +-1
    double g_lo = -1e300, g_hi = 1e300;  // band in G = sum sigma_i log|w-p_i|
    double pole_clearance = 1e-3;
    double box_radius = 10.0;

    double G(const Vec2& x) const;
    Vec2 grad_G(const Vec2& x) const;
    Mat2 hess_G(const Vec2& x) const;
    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    bool in_domain(const Vec2& x) const override;
    std::optional<double> hamiltonian(const Vec2& x) const override;
    std::array<double, 4> seed_box() const override;
};

/// Flat-torus model F = lambda*(cos x + cos y) on [0,2pi)^2, omega = dx^dy;
/// optional level-set exclusions carve out the disks glued over collars.
struct TorusTrigField final : ChartField {
    double lambda = 0.05;
    // exclude {F/lambda > level} (above=true, near the max) or {< level}
    struct Exclusion {
        bool above = true;
        double level = 0.0;
    };
    std::vector<Exclusion> exclusions;

    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    bool in_domain(const Vec2& x) const override;
    Vec2 periods() const override;
    std::optional<double> hamiltonian(const Vec2& x) const override;
    std::array<double, 4> seed_box() const override;
};

/// Global b^m-torus model on [0,2pi)^2 with omega = dtheta1/sin^m(theta1) ^ dtheta2
/// and H = k(t)*u(theta1) + h(t,theta2):
///   dtheta1/dt = -h_theta(t,theta2) * sin^m(theta1),
///   dtheta2/dt = k(t) * g(theta1),
/// where g = 1 for the Reeb-type potential (u' = 1/sin^m) and g = cos(theta1)
/// for the log|sin| potential (m = 1).
struct TorusBModelField final : ChartField {
    int m = 1;
    TrigPoly k;          // period 1
    TimeSpaceProfile h;  // theta2 profile, period 2*pi
    bool reeb_potential = true;

    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    Vec2 periods() const override;
    std::array<double, 4> seed_box() const override;
};

/// Test chart: dz/dt = z, dtheta/dt = -theta (hyperbolic saddle at 0).
struct LinearSaddleField final : ChartField {
    Vec2 velocity(double t, const Vec2& x) const override;
    Mat2 jacobian(double t, const Vec2& x) const override;
    std::array<double, 4> seed_box() const override { return {-1.0, 1.0, -1.0, 1.0}; }
};

}  // namespace bsing
