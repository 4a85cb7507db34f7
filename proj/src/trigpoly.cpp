#include "bsing/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsing {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::size_t TrigPoly::modes() const {
    return std::max(cos_coeffs.size(), sin_coeffs.size());
}

double TrigPoly::eval(double x) const {
    double w = kTwoPi / period;
    double acc = c0;
    std::size_t n = modes();
    for (std::size_t k = 1; k <= n; ++k) {
        double a = k <= cos_coeffs.size() ? cos_coeffs[k - 1] : 0.0;
        double b = k <= sin_coeffs.size() ? sin_coeffs[k - 1] : 0.0;
        if (a != 0.0) acc += a * std::cos(w * k * x);
        if (b != 0.0) acc += b * std::sin(w * k * x);
    }
    return acc;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly d;
    d.period = period;
    double w = kTwoPi / period;
    std::size_t n = modes();
    d.cos_coeffs.assign(n, 0.0);
    d.sin_coeffs.assign(n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double a = k <= cos_coeffs.size() ? cos_coeffs[k - 1] : 0.0;
        double b = k <= sin_coeffs.size() ? sin_coeffs[k - 1] : 0.0;
        // d/dx [a cos(wkx) + b sin(wkx)] = -a wk sin(wkx) + b wk cos(wkx)
        d.cos_coeffs[k - 1] = b * w * k;
        d.sin_coeffs[k - 1] = -a * w * k;
    }
    return d;
}

double TrigPoly::integrate(double x0, double x1) const {
    double w = kTwoPi / period;
    double acc = c0 * (x1 - x0);
    std::size_t n = modes();
    for (std::size_t k = 1; k <= n; ++k) {
        double a = k <= cos_coeffs.size() ? cos_coeffs[k - 1] : 0.0;
        double b = k <= sin_coeffs.size() ? sin_coeffs[k - 1] : 0.0;
        double wk = w * k;
        if (a != 0.0) acc += a / wk * (std::sin(wk * x1) - std::sin(wk * x0));
        if (b != 0.0) acc -= b / wk * (std::cos(wk * x1) - std::cos(wk * x0));
    }
    return acc;
}

bool TrigPoly::is_constant(double tol) const {
    for (double a : cos_coeffs)
        if (std::abs(a) > tol) return false;
    for (double b : sin_coeffs)
        if (std::abs(b) > tol) return false;
    return true;
}

double TrigPoly::min_value(std::size_t grid) const {
    double best = eval(0.0);
    double xbest = 0.0;
    for (std::size_t i = 1; i < grid; ++i) {
        double x = period * double(i) / double(grid);
        double v = eval(x);
        if (v < best) { best = v; xbest = x; }
    }
    // local golden-section refinement around the grid minimizer
    double lo = xbest - period / double(grid), hi = xbest + period / double(grid);
    for (int it = 0; it < 80; ++it) {
        double m1 = lo + (hi - lo) * 0.381966;
        double m2 = hi - (hi - lo) * 0.381966;
        if (eval(m1) < eval(m2)) hi = m2; else lo = m1;
    }
    return std::min(best, eval(0.5 * (lo + hi)));
}

double TrigPoly::max_value(std::size_t grid) const {
    TrigPoly neg = (*this) * -1.0;
    return -neg.min_value(grid);
}

bool TrigPoly::approx_equal(const TrigPoly& other, double tol) const {
    if (std::abs(period - other.period) > tol) return false;
    if (std::abs(c0 - other.c0) > tol) return false;
    std::size_t n = std::max(modes(), other.modes());
    for (std::size_t k = 1; k <= n; ++k) {
        double a0 = k <= cos_coeffs.size() ? cos_coeffs[k - 1] : 0.0;
        double a1 = k <= other.cos_coeffs.size() ? other.cos_coeffs[k - 1] : 0.0;
        double b0 = k <= sin_coeffs.size() ? sin_coeffs[k - 1] : 0.0;
        double b1 = k <= other.sin_coeffs.size() ? other.sin_coeffs[k - 1] : 0.0;
        if (std::abs(a0 - a1) > tol || std::abs(b0 - b1) > tol) return false;
    }
    return true;
}

TrigPoly TrigPoly::operator*(double s) const {
    TrigPoly r = *this;
    r.c0 *= s;
    for (double& a : r.cos_coeffs) a *= s;
    for (double& b : r.sin_coeffs) b *= s;
    return r;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
    if (std::abs(period - other.period) > 1e-12 * std::max(period, other.period))
        throw std::invalid_argument("TrigPoly::operator+: period mismatch");
    TrigPoly r = *this;
    r.c0 += other.c0;
    if (r.cos_coeffs.size() < other.cos_coeffs.size()) r.cos_coeffs.resize(other.cos_coeffs.size(), 0.0);
    if (r.sin_coeffs.size() < other.sin_coeffs.size()) r.sin_coeffs.resize(other.sin_coeffs.size(), 0.0);
    for (std::size_t i = 0; i < other.cos_coeffs.size(); ++i) r.cos_coeffs[i] += other.cos_coeffs[i];
    for (std::size_t i = 0; i < other.sin_coeffs.size(); ++i) r.sin_coeffs[i] += other.sin_coeffs[i];
    return r;
}

TrigPoly fit_trigpoly(const std::function<double(double)>& f, double T,
                      double target_residual, std::size_t max_modes) {
    if (T <= 0.0) throw std::invalid_argument("fit_trigpoly: period must be positive");
    TrigPoly best;
    for (std::size_t n = 4; ; n = std::min(n * 2, max_modes)) {
        std::size_t samples = std::max<std::size_t>(8 * n, 64);
        TrigPoly p;
        p.period = T;
        p.cos_coeffs.assign(n, 0.0);
        p.sin_coeffs.assign(n, 0.0);
        double w = kTwoPi / T;
        double c0 = 0.0;
        std::vector<double> fv(samples);
        for (std::size_t j = 0; j < samples; ++j) {
            fv[j] = f(T * double(j) / double(samples));
            c0 += fv[j];
        }
        p.c0 = c0 / double(samples);
        for (std::size_t k = 1; k <= n; ++k) {
            double ca = 0.0, sa = 0.0;
            for (std::size_t j = 0; j < samples; ++j) {
                double x = T * double(j) / double(samples);
                ca += fv[j] * std::cos(w * k * x);
                sa += fv[j] * std::sin(w * k * x);
            }
            p.cos_coeffs[k - 1] = 2.0 * ca / double(samples);
            p.sin_coeffs[k - 1] = 2.0 * sa / double(samples);
        }
        double resid = 0.0;
        std::size_t check = 4 * samples + 1;
        for (std::size_t j = 0; j < check; ++j) {
            double x = T * double(j) / double(check);
            resid = std::max(resid, std::abs(p.eval(x) - f(x)));
        }
        best = std::move(p);
        if (resid <= target_residual || n >= max_modes) break;
    }
    return best;
}

double TimeSpaceProfile::eval(double t, double theta) const {
    double acc = 0.0;
    for (const Term& term : terms) acc += term.time.eval(t) * term.space.eval(theta);
    return acc;
}

double TimeSpaceProfile::dtheta(double t, double theta) const {
    double acc = 0.0;
    for (const Term& term : terms)
        acc += term.time.eval(t) * term.space.derivative().eval(theta);
    return acc;
}

double TimeSpaceProfile::dtheta2(double t, double theta) const {
    double acc = 0.0;
    for (const Term& term : terms)
        acc += term.time.eval(t) * term.space.derivative().derivative().eval(theta);
    return acc;
}

bool TimeSpaceProfile::time_independent(double tol) const {
    for (const Term& term : terms)
        if (!term.time.is_constant(tol)) return false;
    return true;
}

bool TimeSpaceProfile::theta_independent(double tol) const {
    for (const Term& term : terms) {
        if (term.space.is_constant(tol)) continue;
        // nonconstant space factor only matters if the time factor is nonzero
        if (std::abs(term.time.c0) > tol || !term.time.is_constant(tol)) return false;
    }
    return true;
}

}  // namespace bsing
