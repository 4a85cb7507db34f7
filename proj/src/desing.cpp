// Desingularization / singularization of collar structures and the
// compactified closed-surface models.

#include "bsing/desing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <stdexcept>

#include "bsing/parallel.hpp"

namespace bsing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

/// b-potential u with u'(z) = 1/z^m: log|z| (m = 1), -1/((m-1) z^{m-1}) else.
double b_potential(int order, double z) {
    if (order == 1) return std::log(std::abs(z));
    return -1.0 / (double(order - 1) * ipow(z, order - 1));
}

double b_potential_deriv(int order, double z) { return 1.0 / ipow(z, order); }

double laurent_sum(const CriticalCircle& c, double z, double theta) {
    double acc = 0.0;
    for (int i = 1; i <= c.order; ++i)
        acc += c.laurent_coeffs[i - 1].eval(theta) * ipow(z, c.order - i);
    return acc;
}

void require_uniform_collars(const BSurface& s) {
    for (std::size_t i = 1; i < s.circles.size(); ++i) {
        if (s.circles[i].order != s.circles[0].order ||
            std::abs(s.circles[i].epsilon - s.circles[0].epsilon) > 1e-15)
            throw std::invalid_argument(
                "desingularization needs a single transverse order and collar "
                "width across all circles (one global defining function)");
    }
}

/// Vertex signs with every circle's positive side labelled +1; BFS constraint
/// propagation, failure means no compatible global defining function.
std::map<std::string, int> oriented_two_coloring(const BSurface& s) {
    std::map<std::string, int> sign;
    for (const auto& c : s.circles) {
        if (c.neg_side == c.pos_side)
            throw std::invalid_argument(
                "circle " + c.id + " bounds one component on both sides; no global "
                "defining function exists (use the acyclic path on a cover instead)");
        auto put = [&](const std::string& comp, int v) {
            auto it = sign.find(comp);
            if (it == sign.end())
                sign[comp] = v;
            else if (it->second != v)
                throw std::invalid_argument(
                    "component " + comp + " is forced to both signs; the collar "
                    "orientations admit no global defining function");
        };
        put(c.pos_side, +1);
        put(c.neg_side, -1);
    }
    for (const auto& comp : s.components)
        if (!sign.count(comp.id)) sign[comp.id] = +1;  // closed component
    return sign;
}

}  // namespace

// ----------------------------------------------------------- DesingularizedForm

double DesingularizedForm::coefficient(double z, double theta) const {
    return fn.deriv(z) * laurent_sum(circle, z, theta);
}

DesingularizedForm desingularize_form(const CriticalCircle& circle,
                                      const PiecewiseSmoothFn& fn) {
    circle.validate();
    DesingularizedForm out;
    out.circle_id = circle.id;
    out.fn = fn;
    out.circle = circle;

    const std::size_t nz = 801, nth = 256;
    double eps = circle.epsilon, T = circle.theta_period;
    auto signed_coeff = [&](std::size_t idx) {
        std::size_t iz = idx / nth, it = idx % nth;
        double z = -0.999 * eps + 1.998 * eps * double(iz) / double(nz - 1);
        double theta = T * double(it) / double(nth);
        return out.coefficient(z, theta);
    };
    double lo = par::min_over_grid(nz * nth, signed_coeff);
    double hi = par::max_over_grid(nz * nth, signed_coeff);
    // a symplectic form must keep one sign: a sign change on the grid means a
    // zero between samples even when no sample lands exactly on it
    out.min_abs_coefficient = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);
    if (out.min_abs_coefficient <= 1e-10)
        throw std::runtime_error(
            "desingularized form degenerates on the collar (coefficient reaches " +
            std::to_string(out.min_abs_coefficient) + ")");
    return out;
}

// ---------------------------------------------------- DesingularizedHamiltonian

double DesingularizedHamiltonian::eval_collar(const AdmissibleHamiltonian& H,
                                              const CriticalCircle& circle, double t,
                                              double z, double theta) const {
    const auto& fn = collar_fn.at(circle.id);
    double hv = H.collar_profile(circle.id).empty()
                    ? 0.0
                    : H.collar_profile(circle.id).eval(t, theta);
    double off = collar_offset.count(circle.id) ? collar_offset.at(circle.id).eval(t) : 0.0;
    return H.k(circle.id).eval(t) * fn.eval(z) + hv + off;
}

double DesingularizedHamiltonian::eval_outer(const AdmissibleHamiltonian& H,
                                             const CriticalCircle& circle, double t,
                                             double z, double theta) const {
    const std::string& comp = z < 0.0 ? circle.neg_side : circle.pos_side;
    double sign = component_sign.at(comp);
    double hv = H.collar_profile(circle.id).empty()
                    ? 0.0
                    : H.collar_profile(circle.id).eval(t, theta);
    double base = H.k(circle.id).eval(t) * b_potential(circle.order, z) + hv;
    double off = component_offset.count(comp) ? component_offset.at(comp).eval(t) : 0.0;
    return sign * base + off;
}

double DesingularizedHamiltonian::c1_defect(const AdmissibleHamiltonian& H,
                                            const BSurface& s) const {
    double worst = 0.0;
    for (const auto& circle : s.circles) {
        const auto& fn = collar_fn.at(circle.id);
        for (int side = 0; side < 2; ++side) {
            double z = side == 0 ? -circle.epsilon * (1.0 - 1e-12) : circle.epsilon;
            // one-sided evaluation exactly at the breakpoint keeps the outer
            // piece of fn in play on the negative side
            const std::string& comp = z < 0.0 ? circle.neg_side : circle.pos_side;
            double sign = component_sign.at(comp);
            for (int it = 0; it <= 16; ++it) {
                double t = double(it) / 16.0;
                double theta = 0.37 * circle.theta_period;
                double v_in = eval_collar(H, circle, t, z, theta);
                double v_out = eval_outer(H, circle, t, z, theta);
                double kt = H.k(circle.id).eval(t);
                double d_in = kt * fn.deriv(z);
                double d_out = sign * kt * b_potential_deriv(circle.order, z);
                worst = std::max(worst, std::abs(v_in - v_out) + std::abs(d_in - d_out));
            }
        }
    }
    return worst;
}

DesingularizedHamiltonian desingularize_hamiltonian_unimodular(
    const AdmissibleHamiltonian& H, const BSurface& s, bool surface_path) {
    s.validate();
    require_uniform_collars(s);
    if (s.circles.empty()) throw std::invalid_argument("surface has no critical circles");
    int m = s.circles[0].order;
    double eps = s.circles[0].epsilon;
    if (!surface_path && m % 2 != 0)
        throw std::invalid_argument(
            "the regularizer path needs even transverse order; use the surface "
            "path for odd order");

    auto signs = oriented_two_coloring(s);
    SignAssignment coloring;
    coloring.kind = SignAssignment::Kind::vertex2coloring;
    coloring.sign = signs;
    if (!is_unimodular(H, s, coloring))
        throw std::invalid_argument(
            "Hamiltonian is not unimodular for this surface (shared k and "
            "consistent 2-coloring required); try the acyclic path");

    if (surface_path && m % 2 == 1) {
        for (const auto& c : s.circles) {
            auto prof = H.collar_profile(c.id);
            if (!prof.empty() && !prof.theta_independent())
                throw std::invalid_argument(
                    "odd-order surface desingularization needs a theta-independent "
                    "interior term on collars (the sign flip would tear it)");
        }
    }

    const TrigPoly& k = H.k(s.circles[0].id);

    DesingularizedHamiltonian out;
    out.order = m;
    PiecewiseSmoothFn fn = surface_path ? g_eps(m, eps) : f_eps(m, eps);
    for (const auto& c : s.circles) {
        out.collar_fn[c.id] = fn;
        out.collar_offset[c.id] = TrigPoly::constant(0.0, 1.0);
    }
    for (const auto& comp : s.components) {
        int sgn = signs.at(comp.id);
        if (surface_path) {
            out.component_sign[comp.id] = sgn > 0 ? 1.0 : double((m % 2 == 0) ? 1 : -1);
            out.component_offset[comp.id] =
                sgn > 0 ? TrigPoly::constant(0.0, 1.0)
                        : k * (-surface_offset_constant(m, eps));
        } else {
            double step = 2.0 / ipow(eps, m - 1);  // m even here, m-1 = 2*mm-1
            out.component_sign[comp.id] = 1.0;
            out.component_offset[comp.id] = k * (sgn > 0 ? step : -step);
        }
    }
    return out;
}

DesingularizedHamiltonian desingularize_hamiltonian_acyclic(
    const AdmissibleHamiltonian& H, const BSurface& s,
    const std::string& initial_component, bool surface_path) {
    s.validate();
    require_uniform_collars(s);
    if (s.circles.empty()) throw std::invalid_argument("surface has no critical circles");
    int m = s.circles[0].order;
    double eps = s.circles[0].epsilon;
    if (m % 2 != 0)
        throw std::invalid_argument(
            "acyclic desingularization is formulated for even transverse order");

    BGraph g = build_graph(s);
    if (!is_acyclic(g))
        throw std::invalid_argument("graph not acyclic: the traversal offsets are ill-defined");
    admissibility_report(H, s);  // throws if a circle has no k entry

    double C = surface_path ? surface_offset_constant(m, eps) : 4.0 / ipow(eps, m - 1);

    DesingularizedHamiltonian out;
    out.order = m;
    PiecewiseSmoothFn fn = surface_path ? g_eps(m, eps) : f_eps(m, eps);
    for (const auto& c : s.circles) out.collar_fn[c.id] = fn;

    std::string start = initial_component.empty() ? s.components.front().id : initial_component;
    if (!s.find_component(start))
        throw std::invalid_argument("unknown initial component: " + start);

    std::map<std::string, TrigPoly> offset;
    std::queue<std::string> frontier;
    offset[start] = TrigPoly::constant(0.0, 1.0);
    frontier.push(start);
    while (!frontier.empty()) {
        std::string comp = frontier.front();
        frontier.pop();
        for (const auto& c : s.circles) {
            bool from_pos = c.pos_side == comp, from_neg = c.neg_side == comp;
            if (!from_pos && !from_neg) continue;
            std::string other = from_pos ? c.neg_side : c.pos_side;
            if (offset.count(other)) continue;
            TrigPoly step = H.k(c.id) * C;
            offset[other] = from_pos ? offset[comp] + (-step) : offset[comp] + step;
            frontier.push(other);
        }
    }
    for (const auto& comp : s.components)
        if (!offset.count(comp.id)) offset[comp.id] = TrigPoly::constant(0.0, 1.0);

    for (const auto& comp : s.components) {
        out.component_sign[comp.id] = 1.0;
        out.component_offset[comp.id] = offset[comp.id];
    }
    // collar offsets interpolate between the incident component offsets: at
    // z = +eps the collar expression must meet H + offset(pos side). f_eps
    // already carries the step +C/2 at +eps, so the collar subtracts it;
    // g_eps equals the b-potential at +eps and needs no correction.
    for (const auto& c : s.circles) {
        if (surface_path) {
            out.collar_offset[c.id] = offset[c.pos_side];
        } else {
            TrigPoly half = H.k(c.id) * (0.5 * C);
            out.collar_offset[c.id] = offset[c.pos_side] + (-half);
        }
    }
    return out;
}

// --------------------------------------------------------- verify_field_agreement

FieldAgreement verify_field_agreement(const CriticalCircle& circle, const TrigPoly& k,
                                      const TimeSpaceProfile& h, const PiecewiseSmoothFn& fn,
                                      int nz, int ntheta, int nt,
                                      double htilde_z_perturbation) {
    circle.validate();
    double eps = circle.epsilon, T = circle.theta_period;
    double z_floor = 1e-3 * eps;
    std::size_t n = std::size_t(nz) * std::size_t(ntheta) * std::size_t(nt);

    auto deviation = [&](std::size_t idx) {
        std::size_t it = idx % std::size_t(nt);
        std::size_t rest = idx / std::size_t(nt);
        std::size_t ith = rest % std::size_t(ntheta);
        std::size_t iz = rest / std::size_t(ntheta);
        double z = -0.98 * eps + 1.96 * eps * double(iz) / double(nz - 1);
        if (std::abs(z) < z_floor) z = z < 0.0 ? -z_floor : z_floor;
        double theta = T * double(ith) / double(ntheta);
        double t = double(it) / double(nt);

        double S = laurent_sum(circle, z, theta);
        double ht = h.empty() ? 0.0 : h.dtheta(t, theta);
        double kt = k.eval(t);
        // b-field: omega = (S/z^m) dz^dtheta, H = k u(z) + h
        double vb_z = -ipow(z, circle.order) * ht / S;
        double vb_th = kt / S;
        // desingularized: omega~ = fn'(z) S dz^dtheta, H~ = k fn(z) + h (+ pert*z)
        double ctil = fn.deriv(z) * S;
        double hz = kt * fn.deriv(z) + htilde_z_perturbation;
        double vd_z = -ht / ctil;
        double vd_th = hz / ctil;
        return std::max(std::abs(vb_z - vd_z), std::abs(vb_th - vd_th));
    };

    FieldAgreement out;
    out.grid_points = n;
    out.max_deviation = par::max_over_grid(n, deviation);
    return out;
}

// ------------------------------------------------------------ compactify_component

namespace {

/// Poles in generic position (symmetric layouts collapse the critical points).
std::vector<Vec2> generic_poles(int count) {
    std::vector<Vec2> poles;
    for (int j = 0; j < count; ++j) {
        double r = 0.45 + 0.12 * double(j);
        double a = kTwoPi * double(j) / double(count) + 0.31 * double(j);
        poles.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return poles;
}

/// Newton search for the zeros of grad G from a dense seed grid.
std::vector<Vec2> log_field_critical_points(const PlanarLogField& f, double radius) {
    std::vector<Vec2> found;
    const int n = 60;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 x{-radius + 2.0 * radius * double(i) / double(n - 1),
                   -radius + 2.0 * radius * double(j) / double(n - 1)};
            bool ok = true;
            for (int it = 0; it < 50; ++it) {
                Vec2 g = f.grad_G(x);
                Mat2 hh = f.hess_G(x);
                double det = hh[0][0] * hh[1][1] - hh[0][1] * hh[1][0];
                if (std::abs(det) < 1e-14) {
                    ok = false;
                    break;
                }
                double dx = (g[0] * hh[1][1] - g[1] * hh[0][1]) / det;
                double dy = (g[1] * hh[0][0] - g[0] * hh[1][0]) / det;
                x[0] -= dx;
                x[1] -= dy;
                if (std::hypot(dx, dy) < 1e-13) break;
            }
            if (!ok || std::hypot(x[0], x[1]) > 2.0 * radius) continue;
            Vec2 g = f.grad_G(x);
            if (std::hypot(g[0], g[1]) > 1e-9) continue;
            bool dup = false;
            for (const auto& y : found)
                if (std::hypot(x[0] - y[0], x[1] - y[1]) < 1e-7) dup = true;
            if (!dup) found.push_back(x);
        }
    return found;
}

std::shared_ptr<PlanarLogField> make_log_interior(int degree, double lambda,
                                                  const std::vector<double>& signs_in) {
    auto f = std::make_shared<PlanarLogField>();
    f->lambda = lambda;
    f->poles = generic_poles(degree - 1);
    f->signs.assign(degree - 1, 1.0);
    if (!signs_in.empty()) {
        if ((int)signs_in.size() != degree - 1)
            throw std::invalid_argument("log model: need one sign per pole");
        f->signs = signs_in;
    }
    double sign_sum = 0.0;
    for (double sgn : f->signs) sign_sum += sgn;
    if (std::abs(sign_sum) < 0.5)
        throw std::invalid_argument("log model: pole signs must not sum to zero");
    f->chart_id = "interior:log";
    f->g_lo = -1e300;
    f->g_hi = 1e300;

    auto crit = log_field_critical_points(*f, 1.5);
    if ((int)crit.size() != degree - 2)
        throw std::runtime_error("log model: unexpected critical point count " +
                                 std::to_string(crit.size()));
    double cmin = 1e300, cmax = -1e300;
    for (const auto& x : crit) {
        double v = f->G(x);
        cmin = std::min(cmin, v);
        cmax = std::max(cmax, v);
    }
    f->g_lo = cmin - 2.5;
    f->g_hi = cmax + 2.5;
    // the near-pole level ovals (at g_lo for positive poles, g_hi for
    // negative ones) must stay outside the clearance radius
    double clear = 1e300;
    for (std::size_t pi = 0; pi < f->poles.size(); ++pi) {
        const auto& p = f->poles[pi];
        double rest = 0.0;
        for (std::size_t i = 0; i < f->poles.size(); ++i) {
            if (i == pi) continue;
            double d = std::hypot(p[0] - f->poles[i][0], p[1] - f->poles[i][1]);
            rest += f->signs[i] * std::log(d);
        }
        double level = f->signs[pi] > 0.0 ? f->g_lo : f->g_hi;
        clear = std::min(clear, std::exp((level - rest) / f->signs[pi]));
    }
    f->pole_clearance = 0.25 * clear;
    double outer_level = sign_sum > 0.0 ? f->g_hi : f->g_lo;
    f->box_radius = 1.5 * std::exp(outer_level / sign_sum) + 1.5;
    return f;
}

}  // namespace

std::shared_ptr<ChartField> default_interior_model(int genus, int degree,
                                                   const std::vector<double>& pole_signs) {
    if (genus == 0) {
        if (degree <= 1) {
            auto f = std::make_shared<PlanarRotationField>();
            f->rate = TrigPoly::constant(1.0, 1.0);
            f->r_max = 1.0;
            f->chart_id = "interior:rotation";
            return f;
        }
        if (degree == 2) {
            auto f = std::make_shared<PlanarRotationField>();
            f->rate = TrigPoly::constant(1.0, 1.0);
            f->r_min = 0.25;
            f->r_max = 1.0;
            f->chart_id = "interior:annulus";
            return f;
        }
        return make_log_interior(degree, 0.2, pole_signs);
    }
    if (genus == 1) {
        if (degree > 2)
            throw std::invalid_argument("no default genus-1 interior model beyond degree 2");
        auto f = std::make_shared<TorusTrigField>();
        f->lambda = 0.05;
        f->chart_id = "interior:torus";
        if (degree >= 1) f->exclusions.push_back({true, 1.2});    // disk around the max
        if (degree >= 2) f->exclusions.push_back({false, -1.2});  // disk around the min
        return f;
    }
    throw std::invalid_argument("interior models are explicit only for genus <= 1");
}

CompactifiedModel compactify_component(const BSurface& s, const std::string& component_id,
                                       const AdmissibleHamiltonian& H,
                                       std::shared_ptr<ChartField> interior) {
    const SurfaceComponent* comp = s.find_component(component_id);
    if (!comp) throw std::invalid_argument("unknown component: " + component_id);
    if (comp->genus > 1)
        throw std::invalid_argument(
            "compactification models are explicit only for genus <= 1");

    CompactifiedModel out;
    out.component_id = component_id;
    int d = comp->degree(), g = comp->genus;

    // one rotation disk per boundary circle: extended field -(k/a_m) d/dtheta
    for (const auto& [cid, side] : comp->boundary) {
        const CriticalCircle* c = s.find_circle(cid);
        double am = c->a_top().mean();
        const TrigPoly& k = H.k(cid);
        if (!disk_admissible(k, am))
            throw std::invalid_argument("circle " + cid +
                                        " fails the disk admissibility bound");
        auto disk = std::make_shared<PlanarRotationField>();
        disk->rate = k * (-1.0 / am);
        disk->weight = am;
        disk->r_min = 0.0;
        disk->r_max = 0.5;
        disk->chart_id = "disk:" + cid;
        out.disk_charts.push_back(disk);
    }

    if (interior) {
        out.interior_charts.push_back(std::move(interior));
        out.closed_model = g == 1 ? "torus" : "sphere";
        out.expected_interior_orbits = 2 * g + std::abs(d - 2);
        return out;
    }

    out.closed_model = g == 1 ? "torus" : "sphere";
    out.interior_charts.push_back(default_interior_model(g, d));
    out.expected_interior_orbits = 2 * g + std::abs(d - 2);
    return out;
}

// --------------------------------------------------------------- singularization

SingularizedSurface singularize_surface(const std::vector<SmoothCollarModel>& curves,
                                        const std::vector<SurfaceComponent>& components,
                                        int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    SingularizedSurface out;
    out.surface.components = components;

    for (const auto& cm : curves) {
        if (cm.w_coeffs.empty() || cm.w_coeffs[0].min_value() * cm.w_coeffs[0].max_value() <= 0.0 ||
            std::abs(cm.w_coeffs[0].mean()) < 1e-12)
            throw std::invalid_argument("curve " + cm.id +
                                        ": area density w_0 must be nonvanishing");
        if (cm.hamiltonian_near_curve) {
            for (int i = 0; i <= 40; ++i) {
                double z = -0.45 * cm.epsilon + 0.9 * cm.epsilon * double(i) / 40.0;
                if (std::abs(cm.hamiltonian_near_curve(z) - z) > 1e-9)
                    throw std::invalid_argument(
                        "curve " + cm.id +
                        ": Hamiltonian is not the defining function z near the curve");
            }
        }

        CriticalCircle circle;
        circle.id = cm.id;
        circle.order = order;
        circle.theta_period = cm.theta_period;
        // the Laurent description W/z^m of the singularized form is exact
        // where s_eps is the pure b-potential, i.e. on |z| < eps/2
        circle.epsilon = 0.5 * cm.epsilon;
        circle.neg_side = cm.neg_component;
        circle.pos_side = cm.pos_component;
        // omega = s'(z) W(z,theta) dz^dtheta = (W/z^m) dz^dtheta near the curve:
        // a_i(theta) is the z^{m-i} coefficient of W, i.e. w_{m-i}
        for (int i = 1; i <= order; ++i) {
            int j = order - i;
            if (j < (int)cm.w_coeffs.size())
                circle.laurent_coeffs.push_back(cm.w_coeffs[j]);
            else
                circle.laurent_coeffs.push_back(TrigPoly::constant(0.0, cm.theta_period));
        }
        circle.validate();
        out.surface.circles.push_back(circle);

        out.s_fn[cm.id] = s_eps(order, cm.epsilon);
        out.hamiltonian.per_circle[cm.id] = TrigPoly::constant(1.0, 1.0);
    }
    out.surface.validate();
    return out;
}

}  // namespace bsing
