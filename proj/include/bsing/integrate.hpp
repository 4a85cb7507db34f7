#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bsing {

/// Dormand-Prince 5(4) adaptive step integrator on fixed-size state vectors.
/// Kept dependency-free so the variational (state+Jacobian) systems can share
/// the same code path as the plain flows.
template <std::size_t N>
struct OdeResult {
    std::array<double, N> y{};
    bool aborted = false;       // event fired before reaching t1
    double t_reached = 0.0;
    std::size_t steps = 0;
    std::vector<std::pair<double, std::array<double, N>>> path;  // filled if requested
};

template <std::size_t N>
OdeResult<N> integrate_ode(
    const std::function<void(double, const std::array<double, N>&, std::array<double, N>&)>& f,
    std::array<double, N> y0, double t0, double t1, double tol,
    const std::function<bool(double, const std::array<double, N>&)>& abort_event = nullptr,
    bool store_path = false) {
    // Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeResult<N> res;
    res.y = y0;
    res.t_reached = t0;
    if (store_path) res.path.push_back({t0, y0});
    double span = t1 - t0;
    if (span == 0.0) return res;
    double h = span / 64.0;
    const double hmin = std::abs(span) * 1e-14;
    double t = t0;
    std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
    f(t, res.y, k1);
    while ((span > 0.0) ? (t < t1) : (t > t1)) {
        if ((span > 0.0) ? (t + h > t1) : (t + h < t1)) h = t1 - t;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = res.y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = res.y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);
        double errnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
            double sc = tol * (1.0 + std::max(std::abs(res.y[i]), std::abs(ynew[i])));
            errnorm = std::max(errnorm, std::abs(err[i]) / sc);
        }
        if (errnorm <= 1.0) {
            t += h;
            res.y = ynew;
            k1 = k7;  // FSAL
            ++res.steps;
            if (store_path) res.path.push_back({t, res.y});
            res.t_reached = t;
            if (abort_event && abort_event(t, res.y)) {
                res.aborted = true;
                return res;
            }
        }
        double fac = 0.9 * std::pow(errnorm > 1e-12 ? errnorm : 1e-12, -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        if (std::abs(h) < hmin)
            throw std::runtime_error("integrate_ode: step size underflow");
        if (res.steps > 2000000)
            throw std::runtime_error("integrate_ode: step budget exhausted");
    }
    return res;
}

}  // namespace bsing
