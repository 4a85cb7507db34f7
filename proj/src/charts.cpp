#include "bsing/charts.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsing {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}
}  // namespace

// ---------------------------------------------------------------- CollarField

CollarField::CollarField(CriticalCircle c, TrigPoly kk, TimeSpaceProfile hh)
    : circle(std::move(c)), k(std::move(kk)), h(std::move(hh)) {
    circle.validate();
    z_floor = circle.epsilon * 1e-3;
    chart_id = "collar:" + circle.id;
    for (const auto& term : h.terms) {
        h_th.terms.push_back({term.time, term.space.derivative()});
        h_th2.terms.push_back({term.time, term.space.derivative().derivative()});
    }
    for (const auto& a : circle.laurent_coeffs) a_prime.push_back(a.derivative());
}

double CollarField::S(double z, double theta) const {
    double acc = 0.0;
    for (int i = 1; i <= circle.order; ++i)
        acc += circle.laurent_coeffs[i - 1].eval(theta) * ipow(z, circle.order - i);
    return acc;
}

Vec2 CollarField::velocity(double t, const Vec2& x) const {
    double z = x[0], theta = x[1];
    if (z == 0.0) throw std::domain_error("CollarField: evaluation on critical set");
    double s = S(z, theta);
    double ht = h_th.empty() ? 0.0 : h_th.eval(t, theta);
    return {-ipow(z, circle.order) * ht / s, k.eval(t) / s};
}

Mat2 CollarField::jacobian(double t, const Vec2& x) const {
    double z = x[0], theta = x[1];
    if (z == 0.0) throw std::domain_error("CollarField: evaluation on critical set");
    int m = circle.order;
    double s = S(z, theta);
    double sz = 0.0, sth = 0.0;
    for (int i = 1; i <= m; ++i) {
        if (m - i >= 1)
            sz += circle.laurent_coeffs[i - 1].eval(theta) * double(m - i) * ipow(z, m - i - 1);
        sth += a_prime[i - 1].eval(theta) * ipow(z, m - i);
    }
    double ht = h_th.empty() ? 0.0 : h_th.eval(t, theta);
    double htt = h_th2.empty() ? 0.0 : h_th2.eval(t, theta);
    double kt = k.eval(t);
    double zm = ipow(z, m);
    Mat2 J;
    // dzdot/dz, dzdot/dtheta
    J[0][0] = -double(m) * ipow(z, m - 1) * ht / s + zm * ht * sz / (s * s);
    J[0][1] = -zm * htt / s + zm * ht * sth / (s * s);
    // dthetadot/dz, dthetadot/dtheta
    J[1][0] = -kt * sz / (s * s);
    J[1][1] = -kt * sth / (s * s);
    return J;
}

bool CollarField::in_domain(const Vec2& x) const {
    double az = std::abs(x[0]);
    return az > z_floor && az < circle.epsilon;
}

std::optional<double> CollarField::hamiltonian(const Vec2& x) const {
    if (!k.is_constant()) return std::nullopt;
    if (!h.empty() && !h.time_independent()) return std::nullopt;
    double z = x[0], theta = x[1];
    double u = circle.order == 1
                   ? std::log(std::abs(z))
                   : -1.0 / (double(circle.order - 1) * ipow(z, circle.order - 1));
    double hv = h.empty() ? 0.0 : h.eval(0.0, theta);
    return k.c0 * u + hv;
}

std::array<double, 4> CollarField::seed_box() const {
    return {-0.9 * circle.epsilon, 0.9 * circle.epsilon, 0.0, circle.theta_period};
}

// -------------------------------------------------------- PlanarRotationField

Vec2 PlanarRotationField::velocity(double t, const Vec2& x) const {
    double c = rate.eval(t);
    return {-c * x[1], c * x[0]};
}

Mat2 PlanarRotationField::jacobian(double t, const Vec2& x) const {
    double c = rate.eval(t);
    return {{{0.0, -c}, {c, 0.0}}};
}

bool PlanarRotationField::in_domain(const Vec2& x) const {
    double r = std::hypot(x[0], x[1]);
    return r >= r_min && r <= r_max;
}

std::optional<double> PlanarRotationField::hamiltonian(const Vec2& x) const {
    if (!rate.is_constant()) return std::nullopt;
    return weight * rate.c0 * 0.5 * (x[0] * x[0] + x[1] * x[1]);
}

std::array<double, 4> PlanarRotationField::seed_box() const {
    return {-r_max, r_max, -r_max, r_max};
}

// ------------------------------------------------------------- PlanarLogField

double PlanarLogField::G(const Vec2& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i)
        acc += signs[i] * 0.5 * std::log((x[0] - poles[i][0]) * (x[0] - poles[i][0]) +
                                         (x[1] - poles[i][1]) * (x[1] - poles[i][1]));
    return acc;
}

Vec2 PlanarLogField::grad_G(const Vec2& x) const {
    Vec2 g{0.0, 0.0};
    for (std::size_t i = 0; i < poles.size(); ++i) {
        double dx = x[0] - poles[i][0], dy = x[1] - poles[i][1];
        double r2 = dx * dx + dy * dy;
        g[0] += signs[i] * dx / r2;
        g[1] += signs[i] * dy / r2;
    }
    return g;
}

Mat2 PlanarLogField::hess_G(const Vec2& x) const {
    Mat2 h{{{0.0, 0.0}, {0.0, 0.0}}};
    for (std::size_t i = 0; i < poles.size(); ++i) {
        double dx = x[0] - poles[i][0], dy = x[1] - poles[i][1];
        double r2 = dx * dx + dy * dy;
        double r4 = r2 * r2;
        h[0][0] += signs[i] * (r2 - 2.0 * dx * dx) / r4;
        h[0][1] += signs[i] * (-2.0 * dx * dy) / r4;
        h[1][1] += signs[i] * (r2 - 2.0 * dy * dy) / r4;
    }
    h[1][0] = h[0][1];
    return h;
}

Vec2 PlanarLogField::velocity(double t, const Vec2& x) const {
    Vec2 g = grad_G(x);
    return {-lambda * g[1], lambda * g[0]};
}

Mat2 PlanarLogField::jacobian(double t, const Vec2& x) const {
    Mat2 h = hess_G(x);
    // d/dx (-lambda G_y, lambda G_x)
    return {{{-lambda * h[0][1], -lambda * h[1][1]}, {lambda * h[0][0], lambda * h[0][1]}}};
}

bool PlanarLogField::in_domain(const Vec2& x) const {
    for (const auto& p : poles)
        if (std::hypot(x[0] - p[0], x[1] - p[1]) < pole_clearance) return false;
    double g = G(x);
    return g >= g_lo && g <= g_hi;
}

std::optional<double> PlanarLogField::hamiltonian(const Vec2& x) const {
    return lambda * G(x);
}

std::array<double, 4> PlanarLogField::seed_box() const {
    return {-box_radius, box_radius, -box_radius, box_radius};
}

// ------------------------------------------------------------- TorusTrigField

Vec2 TorusTrigField::velocity(double t, const Vec2& x) const {
    // F = lambda (cos x + cos y), X = (-F_y, F_x) = (lambda sin y, -lambda sin x)
    return {lambda * std::sin(x[1]), -lambda * std::sin(x[0])};
}

Mat2 TorusTrigField::jacobian(double t, const Vec2& x) const {
    return {{{0.0, lambda * std::cos(x[1])}, {-lambda * std::cos(x[0]), 0.0}}};
}

bool TorusTrigField::in_domain(const Vec2& x) const {
    double f = std::cos(x[0]) + std::cos(x[1]);
    for (const auto& ex : exclusions) {
        if (ex.above && f > ex.level) return false;
        if (!ex.above && f < ex.level) return false;
    }
    return true;
}

Vec2 TorusTrigField::periods() const { return {kTwoPi, kTwoPi}; }

std::optional<double> TorusTrigField::hamiltonian(const Vec2& x) const {
    return lambda * (std::cos(x[0]) + std::cos(x[1]));
}

std::array<double, 4> TorusTrigField::seed_box() const {
    return {0.0, kTwoPi, 0.0, kTwoPi};
}

// ----------------------------------------------------------- TorusBModelField

Vec2 TorusBModelField::velocity(double t, const Vec2& x) const {
    double s1 = std::sin(x[0]);
    double ht = h.empty() ? 0.0 : h.dtheta(t, x[1]);
    double g = reeb_potential ? 1.0 : std::cos(x[0]);
    return {-ht * ipow(s1, m), k.eval(t) * g};
}

Mat2 TorusBModelField::jacobian(double t, const Vec2& x) const {
    double s1 = std::sin(x[0]), c1 = std::cos(x[0]);
    double ht = h.empty() ? 0.0 : h.dtheta(t, x[1]);
    double htt = h.empty() ? 0.0 : h.dtheta2(t, x[1]);
    double kt = k.eval(t);
    Mat2 J;
    J[0][0] = -ht * double(m) * ipow(s1, m - 1) * c1;
    J[0][1] = -htt * ipow(s1, m);
    J[1][0] = reeb_potential ? 0.0 : -kt * s1;
    J[1][1] = 0.0;
    return J;
}

Vec2 TorusBModelField::periods() const { return {kTwoPi, kTwoPi}; }

std::array<double, 4> TorusBModelField::seed_box() const {
    return {0.0, kTwoPi, 0.0, kTwoPi};
}

// ---------------------------------------------------------- LinearSaddleField

Vec2 LinearSaddleField::velocity(double t, const Vec2& x) const { return {x[0], -x[1]}; }

Mat2 LinearSaddleField::jacobian(double t, const Vec2& x) const {
    return {{{1.0, 0.0}, {0.0, -1.0}}};
}

}  // namespace bsing
