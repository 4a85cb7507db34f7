#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsing/charts.hpp"
#include "bsing/geometry.hpp"
#include "bsing/hamiltonian.hpp"

namespace bsing {

/// X = (1/S)(k(t) d/dtheta - z^m h_theta d/dz), S = sum a_i z^{m-i}.
/// Returns (dz/dt, dtheta/dt). Throws std::domain_error at z = 0.
Vec2 collar_vector_field(const CriticalCircle& circle, const AdmissibleHamiltonian& H,
                         double z, double theta, double t);

/// Closed-form m=1 collar flow for constant k and constant a_1:
///   theta(t) = theta0 + (k/a_1) t,
///   z(t) = z0 * exp(-(1/a_1) int_0^t h_theta(s, theta0 + (k/a_1) s) ds),
/// the integral evaluated exactly for autonomous terms and by high-order
/// quadrature for time-modulated ones.
/// Throws std::invalid_argument unless m = 1 with constant k and a_1.
Vec2 collar_flow_closed_form(const CriticalCircle& circle, const TrigPoly& k,
                             const TimeSpaceProfile& h, const Vec2& x0, double t);

struct FlowPath {
    std::vector<std::pair<double, Vec2>> points;
    bool aborted = false;  // left the domain / hit z_floor
    double t_reached = 0.0;
};

/// Adaptive Runge-Kutta path; aborts (with the event flagged) if the field's
/// domain is left, in particular at the collar z_floor.
FlowPath integrate(const ChartField& field, const Vec2& x0, double duration, double tol);

struct TimeOneMap {
    Vec2 image;
    Mat2 jacobian;  // Dphi^1, from the variational equations
    bool aborted = false;
};

/// Time-1 map with the variational equations integrated alongside.
TimeOneMap time_one_map(const ChartField& field, const Vec2& x0, double tol = 1e-12);

struct OrbitRecord {
    std::string chart_id;
    Vec2 point{};           // representative initial condition
    double residual = 0.0;  // |phi^1(x) - x| (periodic wrap)
    double det = 0.0;       // det(Id - Dphi^1)
    bool nondegenerate = false;
    int index = 0;  // grading in {-1, 0, +1}: max/min <-> -1/+1, saddle <-> 0
    bool index_supported = false;
    bool degenerate_family = false;
};

struct OrbitSearch {
    std::vector<OrbitRecord> orbits;  // isolated orbits, deduplicated, sorted
    bool degenerate_family_flagged = false;
    std::size_t family_seed_count = 0;
};

/// Newton refinement of fixed points of phi^1 seeded on a grid over the
/// chart's seed box; seeds are processed concurrently and merged in
/// deterministic sorted order. Degenerate families (curves of fixed points
/// with |det(Id-Dphi^1)| < 1e-6 across >= 8 near-collinear seeds) are flagged
/// and excluded from the isolated-orbit list.
OrbitSearch find_periodic_orbits(const ChartField& field, int grid_density = 64,
                                 double tol = 1e-10);

/// Convenience: run the finder over every collar of the surface.
OrbitSearch find_collar_periodic_orbits(const AdmissibleHamiltonian& H, const BSurface& s,
                                        int grid_density = 64, double tol = 1e-10);

struct RootsOfF {
    bool identically_zero = false;  // sentinel: F == 0, every theta0 is a root
    std::vector<double> roots;      // in [0, T)
};

/// F(theta0) = int_0^{T/k} h_theta(t, theta0 + k t) dt; roots by sign-change
/// bisection at resolution 1e-4 then Newton. Requires m = 1 normalized collar
/// and constant k != 0.
RootsOfF roots_of_F(const CriticalCircle& circle, const TrigPoly& k,
                    const TimeSpaceProfile& h);

/// Morse-index grading of a nondegenerate critical-point orbit of an
/// autonomous Hamiltonian: min -> +1, saddle -> 0, max -> -1.
/// Sets index_supported = false when the chart has no autonomous Hamiltonian
/// or the point is not a critical point.
void classify_index(OrbitRecord& rec, const ChartField& field);

}  // namespace bsing
