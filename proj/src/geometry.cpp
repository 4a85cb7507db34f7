#include "bsing/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "bsing/graph.hpp"

namespace bsing {

void CriticalCircle::validate() const {
    if (order < 1) throw std::invalid_argument("circle " + id + ": order must be >= 1");
    if (theta_period <= 0.0) throw std::invalid_argument("circle " + id + ": theta_period must be positive");
    if (epsilon <= 0.0) throw std::invalid_argument("circle " + id + ": epsilon must be positive");
    if ((int)laurent_coeffs.size() != order)
        throw std::invalid_argument("circle " + id + ": expected " + std::to_string(order) +
                                    " Laurent coefficients");
    // a_m must not vanish: check sign-definiteness on a dense grid
    const TrigPoly& am = laurent_coeffs.back();
    if (am.min_value() <= 0.0 && am.max_value() >= 0.0)
        throw std::invalid_argument("circle " + id + ": a_m vanishes on the collar");
    if (neg_side.empty() || pos_side.empty())
        throw std::invalid_argument("circle " + id + ": missing side component reference");
}

const SurfaceComponent* BSurface::find_component(const std::string& cid) const {
    for (const auto& c : components)
        if (c.id == cid) return &c;
    return nullptr;
}

const CriticalCircle* BSurface::find_circle(const std::string& cid) const {
    for (const auto& c : circles)
        if (c.id == cid) return &c;
    return nullptr;
}

void BSurface::validate() const {
    if (components.empty()) throw std::invalid_argument("BSurface: at least one component required");
    for (const auto& circ : circles) {
        circ.validate();
        const SurfaceComponent* neg = find_component(circ.neg_side);
        const SurfaceComponent* pos = find_component(circ.pos_side);
        if (!neg || !pos)
            throw std::invalid_argument("circle " + circ.id + ": dangling side reference");
        auto lists = [&](const SurfaceComponent* comp, Side side) {
            for (const auto& [cid, s] : comp->boundary)
                if (cid == circ.id && s == side) return true;
            return false;
        };
        if (!lists(neg, Side::neg))
            throw std::invalid_argument("circle " + circ.id + ": component " + neg->id +
                                        " does not list the neg side");
        if (!lists(pos, Side::pos))
            throw std::invalid_argument("circle " + circ.id + ": component " + pos->id +
                                        " does not list the pos side");
    }
    for (const auto& comp : components) {
        for (const auto& [cid, side] : comp.boundary) {
            const CriticalCircle* circ = find_circle(cid);
            if (!circ)
                throw std::invalid_argument("component " + comp.id + ": dangling circle reference " + cid);
            const std::string& expect = side == Side::neg ? circ->neg_side : circ->pos_side;
            if (expect != comp.id)
                throw std::invalid_argument("component " + comp.id + ": side mismatch on circle " + cid);
        }
    }
}

double eval_collar_form(const CriticalCircle& circle, double z, double theta) {
    if (z == 0.0) throw std::domain_error("eval_collar_form: evaluation on critical set");
    double acc = 0.0;
    double zpow = z;  // z^i
    for (int i = 1; i <= circle.order; ++i) {
        acc += circle.laurent_coeffs[i - 1].eval(theta) / zpow;
        zpow *= z;
    }
    return acc;
}

double modular_weight(const CriticalCircle& circle) {
    return circle.a_top().integrate(0.0, circle.theta_period);
}

NormalizedCollar normalize_collar(const CriticalCircle& circle) {
    circle.validate();
    NormalizedCollar out;
    const TrigPoly am = circle.a_top();
    if (am.is_constant()) {
        out.circle = circle;
        out.reparametrized = false;
        return out;
    }
    const double T = circle.theta_period;
    const bool negative = am.eval(0.0) < 0.0;
    // phi(theta) = integral of a_m from 0 to theta (monotone; flipped if a_m < 0)
    auto phi = [am, negative](double theta) {
        double v = am.integrate(0.0, theta);
        return negative ? -v : v;
    };
    const double Tn = phi(T);  // new period = |modular weight|
    // Monotone inverse by bisection + Newton polish.
    auto phi_inv = [am, phi, T, Tn, negative](double tp) {
        double wraps = std::floor(tp / Tn);
        double target = tp - wraps * Tn;
        double lo = 0.0, hi = T;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (phi(mid) < target) lo = mid; else hi = mid;
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            double d = negative ? -am.eval(x) : am.eval(x);
            if (d == 0.0) break;
            x -= (phi(x) - target) / d;
        }
        return x + wraps * T;
    };

    CriticalCircle norm = circle;
    norm.theta_period = Tn;
    norm.laurent_coeffs.clear();
    for (int i = 1; i <= circle.order; ++i) {
        if (i == circle.order) {
            // z is untouched, so the sign of a_m is a reparametrization invariant
            norm.laurent_coeffs.push_back(TrigPoly::constant(negative ? -1.0 : 1.0, Tn));
        } else {
            const TrigPoly ai = circle.laurent_coeffs[i - 1];
            const TrigPoly amc = am;
            const double sgn = negative ? -1.0 : 1.0;
            norm.laurent_coeffs.push_back(fit_trigpoly(
                [ai, amc, phi_inv, sgn](double tp) {
                    double theta = phi_inv(tp);
                    return sgn * ai.eval(theta) / amc.eval(theta);
                },
                Tn, 1e-12));
        }
    }
    out.circle = std::move(norm);
    out.reparametrized = true;
    out.phi = phi;
    out.phi_inverse = phi_inv;
    return out;
}

BGraph build_graph(const BSurface& surface) {
    surface.validate();
    BGraph g;
    for (const auto& comp : surface.components) g.vertices.push_back({comp.id, comp.genus});
    for (const auto& circ : surface.circles) g.edges.push_back({circ.id, circ.neg_side, circ.pos_side});
    return g;
}

}  // namespace bsing
