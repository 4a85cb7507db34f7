// Timing comparison of the parallel grid kernels against their serial
// reference implementations.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "bsing/hamiltonian.hpp"
#include "bsing/parallel.hpp"

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
double timed(const char* label, F&& f) {
    // warm-up, then best of three
    f();
    double best = 1e300, value = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
        double t0 = now_ms();
        value = f();
        best = std::min(best, now_ms() - t0);
    }
    std::printf("%-28s %10.2f ms   (value %.12g)\n", label, best, value);
    return best;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", bsing::par::effective_threads());

    const std::size_t n = 1 << 22;
    auto payload = [](std::size_t i) {
        double x = 1e-6 * double(i);
        return std::sin(x) * std::cos(3.0 * x) + std::log1p(x);
    };

    double ts = timed("max_over_grid (serial)", [&] {
        return bsing::par::max_over_grid_serial(n, payload);
    });
    double tp = timed("max_over_grid (parallel)", [&] {
        return bsing::par::max_over_grid(n, payload);
    });
    std::printf("speedup: %.2fx\n\n", ts / tp);

    // the dominating production kernel: the admissibility threshold scan
    bsing::CriticalCircle circle;
    circle.id = "bench";
    circle.order = 3;
    circle.theta_period = 6.283185307179586;
    circle.epsilon = 0.4;
    {
        bsing::TrigPoly a1(0.0, circle.theta_period), a2(0.0, circle.theta_period),
            a3(1.0, circle.theta_period);
        a1.cos_coeffs = {0.2};
        a2.sin_coeffs = {0.1, 0.05};
        a3.cos_coeffs = {0.0, 0.3};
        circle.laurent_coeffs = {a1, a2, a3};
    }
    timed("t_eps_threshold", [&] { return bsing::t_eps_threshold(circle); });
    return 0;
}
