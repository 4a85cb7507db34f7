#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsing/charts.hpp"
#include "bsing/geometry.hpp"
#include "bsing/hamiltonian.hpp"
#include "bsing/piecewise.hpp"

namespace bsing {

/// Smooth collar 2-form obtained from omega by replacing dz/z^m with dfn:
/// coefficient fn'(z) * sum a_i(theta) z^{m-i}.
struct DesingularizedForm {
    std::string circle_id;
    PiecewiseSmoothFn fn;
    CriticalCircle circle;

    double coefficient(double z, double theta) const;
    double min_abs_coefficient = 0.0;  // grid certificate (symplecticity)
};

/// Throws std::runtime_error if the coefficient vanishes on the collar grid.
DesingularizedForm desingularize_form(const CriticalCircle& circle, const PiecewiseSmoothFn& fn);

/// Global smooth Hamiltonian produced by either desingularization path:
/// per-component sign flip and t-dependent offset, per-circle collar
/// expression k_i(t)*fn(z) (+ collar offset).
struct DesingularizedHamiltonian {
    int order = 1;
    std::map<std::string, double> component_sign;     // +1 / -1
    std::map<std::string, TrigPoly> component_offset;  // added to sign*H on the component
    std::map<std::string, PiecewiseSmoothFn> collar_fn;
    std::map<std::string, TrigPoly> collar_offset;

    /// H~ on the collar of `circle_id`:
    /// k(t)*fn(z) + h(t,theta) + collar_offset(t).
    double eval_collar(const AdmissibleHamiltonian& H, const CriticalCircle& circle,
                       double t, double z, double theta) const;
    /// H~ just outside the collar on the given side, using the b-expression
    /// of H (k*log|z| or -k/((m-1)z^{m-1}) + h) with the component sign/offset.
    double eval_outer(const AdmissibleHamiltonian& H, const CriticalCircle& circle,
                      double t, double z, double theta) const;
    /// Max over t-grid of |collar - outer| + |d/dz collar - d/dz outer| at
    /// z = +-eps (continuity / C1 certificate).
    double c1_defect(const AdmissibleHamiltonian& H, const BSurface& s) const;
};

/// Unimodular path: collar k(t)*fn(z) + h with fn = f_eps (even order) or
/// g_eps (surface path, any order); component offsets +-(2/eps^{2m-1})k(t)
/// for f_eps, or the surface constant C(eps, m) with the (-1)^m flip for
/// g_eps. Throws std::invalid_argument if H is not unimodular w.r.t. the
/// coloring, or if no coloring consistent with the collar orientations exists.
DesingularizedHamiltonian desingularize_hamiltonian_unimodular(
    const AdmissibleHamiltonian& H, const BSurface& s, bool surface_path = false);

/// Acyclic path: breadth-first traversal from `initial_component`; each
/// crossed edge accumulates the offset 4 k_i(t)/eps^{2m-1} (f_eps, even
/// order) or the surface constant with sign flips (g_eps path).
/// Throws std::invalid_argument if the associated graph is cyclic.
DesingularizedHamiltonian desingularize_hamiltonian_acyclic(
    const AdmissibleHamiltonian& H, const BSurface& s,
    const std::string& initial_component = "", bool surface_path = false);

struct FieldAgreement {
    double max_deviation = 0.0;
    std::size_t grid_points = 0;
};

/// Sup over a collar (z, theta, t) grid of the chart-metric deviation between
/// X_H w.r.t. omega and X_{H~} w.r.t. the desingularized form.
/// `htilde_z_perturbation` adds that multiple of z to H~ (negative control).
FieldAgreement verify_field_agreement(const CriticalCircle& circle, const TrigPoly& k,
                                      const TimeSpaceProfile& h, const PiecewiseSmoothFn& fn,
                                      int nz = 64, int ntheta = 64, int nt = 8,
                                      double htilde_z_perturbation = 0.0);

/// Closed-surface model of one component: explicit interior chart plus one
/// rotation disk per boundary circle (each with a single elliptic fixed
/// point at its center).
struct CompactifiedModel {
    std::string component_id;
    std::string closed_model;  // "sphere" or "torus"
    std::vector<std::shared_ptr<ChartField>> interior_charts;
    std::vector<std::shared_ptr<ChartField>> disk_charts;
    int expected_interior_orbits = 0;
};

/// Explicit interior model for a component of the given genus (<= 1) and
/// degree: rotation disk / annulus (g = 0, deg <= 2), harmonic-log level band
/// (g = 0, deg >= 3; optional pole signs, sum must be nonzero), trig torus
/// with level-set exclusions (g = 1, deg <= 2). All critical points are
/// nondegenerate; their count is 2g + |deg - 2|.
std::shared_ptr<ChartField> default_interior_model(int genus, int degree,
                                                   const std::vector<double>& pole_signs = {});

/// Requires an explicit chart (g <= 1) and disk-admissible boundary circles;
/// throws std::invalid_argument otherwise. An interior field may be supplied
/// (e.g. from the optimal construction); otherwise the default optimal-type
/// model for (genus, degree) is built.
CompactifiedModel compactify_component(const BSurface& s, const std::string& component_id,
                                       const AdmissibleHamiltonian& H,
                                       std::shared_ptr<ChartField> interior = nullptr);

/// Input for the singularization: a smooth symplectic collar around a curve,
/// omega~ = W(z,theta) dz^dtheta with W = sum_j w_coeffs[j](theta) z^j, and
/// a smooth Hamiltonian equal to z near the curve.
struct SmoothCollarModel {
    std::string id;
    double theta_period = 1.0;
    double epsilon = 0.1;
    std::vector<TrigPoly> w_coeffs;  // w_coeffs[0] must be nonvanishing
    std::string neg_component, pos_component;
    /// The smooth Hamiltonian near the curve as a function of z; must equal z.
    std::function<double(double)> hamiltonian_near_curve;
};

struct SingularizedSurface {
    BSurface surface;
    AdmissibleHamiltonian hamiltonian;              // k = 1 on every new circle
    std::map<std::string, PiecewiseSmoothFn> s_fn;  // per circle
};

/// b^m-structure on a smooth surface with marked curves: omega = s_eps' *
/// omega~ in collars, H = s_eps(z) there, (+-)H~ outside. Throws
/// std::invalid_argument if the supplied Hamiltonian is not z near a curve.
SingularizedSurface singularize_surface(const std::vector<SmoothCollarModel>& curves,
                                        const std::vector<SurfaceComponent>& components,
                                        int order);

}  // namespace bsing
