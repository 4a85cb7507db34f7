#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bsing {

/// Real trigonometric polynomial on [0, T):
///   f(x) = c0 + sum_{k>=1} cos_coeffs[k-1]*cos(2*pi*k*x/T)
///              + sin_coeffs[k-1]*sin(2*pi*k*x/T)
/// Closed under differentiation and definite integration, which keeps the
/// collar flows exactly quadrature-free.
struct TrigPoly {
    double period = 1.0;
    double c0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    TrigPoly() = default;
    explicit TrigPoly(double constant, double T = 1.0) : period(T), c0(constant) {}

    static TrigPoly constant(double c, double T = 1.0) { return TrigPoly(c, T); }

    std::size_t modes() const;

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    TrigPoly derivative() const;

    /// Definite integral over [x0, x1].
    double integrate(double x0, double x1) const;

    /// Integral over one full period (= c0 * period).
    double integral_over_period() const { return c0 * period; }

    double mean() const { return c0; }

    bool is_constant(double tol = 1e-12) const;

    /// Grid-refined minimum / maximum over one period.
    double min_value(std::size_t grid = 4096) const;
    double max_value(std::size_t grid = 4096) const;

    /// Coefficient-wise comparison (periods must match to tol as well).
    bool approx_equal(const TrigPoly& other, double tol = 1e-10) const;

    TrigPoly operator*(double s) const;
    TrigPoly operator+(const TrigPoly& other) const;  // periods must match
    TrigPoly operator-() const { return (*this) * -1.0; }
};

/// Least-residual trig-poly fit of a smooth T-periodic function by trapezoid
/// quadrature (spectrally accurate for periodic integrands). Modes are
/// escalated until the dense-grid residual drops below `target_residual`
/// or `max_modes` is hit.
TrigPoly fit_trigpoly(const std::function<double(double)>& f, double T,
                      double target_residual = 1e-12, std::size_t max_modes = 96);

/// Time-modulated collar profile  h_t(theta) = sum_j tau_j(t) * eta_j(theta),
/// tau_j period 1, eta_j period T.  An autonomous h is a single term with
/// tau ≡ 1.
struct TimeSpaceProfile {
    struct Term {
        TrigPoly time;   // period 1
        TrigPoly space;  // period T (collar theta period)
    };
    std::vector<Term> terms;

    TimeSpaceProfile() = default;
    explicit TimeSpaceProfile(TrigPoly autonomous) {
        terms.push_back({TrigPoly::constant(1.0, 1.0), std::move(autonomous)});
    }

    bool empty() const { return terms.empty(); }

    double eval(double t, double theta) const;
    /// d/dtheta at (t, theta).
    double dtheta(double t, double theta) const;
    /// d^2/dtheta^2 at (t, theta).
    double dtheta2(double t, double theta) const;
    /// True if every time factor is constant (autonomous profile).
    bool time_independent(double tol = 1e-12) const;
    /// True if dtheta vanishes identically (collar-independent interior term).
    bool theta_independent(double tol = 1e-12) const;
};

}  // namespace bsing
