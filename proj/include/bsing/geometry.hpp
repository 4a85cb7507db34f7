#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsing/trigpoly.hpp"

namespace bsing {

struct BGraph;

/// One component of the critical set, with its collar data.
/// Collar coordinates (z, theta) in (-eps, eps) x [0, T), form
/// omega = (sum_i a_i(theta) z^{-i}) dz ^ dtheta, transverse field z^m d/dz.
struct CriticalCircle {
    std::string id;
    int order = 1;               // m >= 1
    double theta_period = 1.0;   // T
    std::vector<TrigPoly> laurent_coeffs;  // a_1 .. a_m, period T
    double epsilon = 0.1;
    std::string neg_side;  // component on z < 0
    std::string pos_side;  // component on z > 0 (may equal neg_side)

    const TrigPoly& a_top() const { return laurent_coeffs.back(); }
    void validate() const;  // throws std::invalid_argument
};

enum class Side { neg, pos };

enum class ChartKind { none, flat_torus, sphere, compactified };

struct SurfaceComponent {
    std::string id;
    int genus = 0;
    std::vector<std::pair<std::string, Side>> boundary;  // (circle id, side)
    ChartKind chart = ChartKind::none;
    double chart_period_1 = 0.0;  // FlatTorusChart periods, if any
    double chart_period_2 = 0.0;
    double interior_symplectic_area = 1.0;

    int degree() const { return (int)boundary.size(); }
};

struct BSurface {
    std::vector<SurfaceComponent> components;
    std::vector<CriticalCircle> circles;

    const SurfaceComponent* find_component(const std::string& id) const;
    const CriticalCircle* find_circle(const std::string& id) const;
    void validate() const;  // throws std::invalid_argument on broken references
};

/// omega = c(z, theta) dz ^ dtheta with c = sum a_i(theta) z^{-i}.
/// Throws std::domain_error at z = 0.
double eval_collar_form(const CriticalCircle& circle, double z, double theta);

/// Modular weight = integral of a_m over one theta period.
double modular_weight(const CriticalCircle& circle);

/// Normalized collar: a_m constant. If a_m is already constant the input is
/// returned unchanged; otherwise theta is reparametrized by the primitive of
/// a_m (a_m' = 1, theta period = modular weight). The reparametrization map
/// is returned alongside so callers can grid-check form invariance.
struct NormalizedCollar {
    CriticalCircle circle;
    bool reparametrized = false;
    // theta' = phi(theta), only meaningful when reparametrized
    std::function<double(double)> phi;
    std::function<double(double)> phi_inverse;
};
NormalizedCollar normalize_collar(const CriticalCircle& circle);

/// Associated graph: one genus-weighted vertex per component, one edge per
/// circle. Throws on dangling side references.
BGraph build_graph(const BSurface& surface);

}  // namespace bsing
