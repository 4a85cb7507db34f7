#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "bsing/piecewise.hpp"

using namespace bsing;

namespace {
double fd_deriv(const PiecewiseSmoothFn& f, double x, double h = 1e-7) {
    return (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
}
}  // namespace

TEST_CASE("f_eps: odd regularizer, C1, increasing, exact tails") {
    for (int order : {2, 4, 6}) {
        CAPTURE(order);
        double eps = 0.3;
        PiecewiseSmoothFn f = f_eps(order, eps);
        CHECK(f.c1_defect() < 1e-9);
        CHECK(f.min_abs_derivative(-0.99 * eps, 0.99 * eps) > 0.0);
        // odd function on the interior band
        for (double x : {0.05, 0.12, 0.25})
            CHECK(f.eval(-x) == doctest::Approx(-f.eval(x)).epsilon(1e-10));
        // outside the band: the shifted b-potential
        int m = order;
        double x = 2.0 * eps;
        double tail = -1.0 / ((m - 1) * std::pow(x, m - 1)) + 2.0 / std::pow(eps, m - 1);
        CHECK(f.eval(x) == doctest::Approx(tail).epsilon(1e-12));
        CHECK(f.eval(-x) == doctest::Approx(-tail).epsilon(1e-12));
        // derivative continuity across the breakpoints, sampled
        for (double b : {-eps, eps})
            CHECK(fd_deriv(f, b + 1e-4) ==
                  doctest::Approx(fd_deriv(f, b - 1e-4)).epsilon(0.05));
    }
    CHECK_THROWS_AS(f_eps(3, 0.3), std::invalid_argument);
}

TEST_CASE("g_eps: strictly increasing surface regularizer") {
    for (int order : {1, 2, 3, 4}) {
        CAPTURE(order);
        double eps = 0.4;
        PiecewiseSmoothFn g = g_eps(order, eps);
        CHECK(g.c1_defect() < 1e-9);
        CHECK(g.min_abs_derivative(-0.99 * eps, 0.99 * eps) > 0.0);
        // strictly increasing on a dense sample
        double prev = g.eval(-0.99 * eps);
        for (int i = 1; i <= 300; ++i) {
            double x = -0.99 * eps + 1.98 * eps * i / 300.0;
            double v = g.eval(x);
            CHECK(v > prev);
            prev = v;
        }
        // right tail is the b-potential itself
        double x = 0.8 * eps;
        double expect = order == 1 ? std::log(x)
                                   : -1.0 / ((order - 1) * std::pow(x, order - 1));
        CHECK(g.eval(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("g_eps negative tail carries the documented offset") {
    double eps = 0.4;
    // order 1: -log|x| + 2 log(eps/2) - eps
    PiecewiseSmoothFn g1 = g_eps(1, eps);
    double x = -0.8 * eps;
    CHECK(g1.eval(x) ==
          doctest::Approx(-std::log(-x) + 2.0 * std::log(eps / 2.0) - eps).epsilon(1e-12));
    // order 3: +1/((m-1)|x|^{m-1}) - 2^{m+1}/((m-1) eps^{m-1})
    PiecewiseSmoothFn g3 = g_eps(3, eps);
    double expect = 1.0 / (2.0 * x * x) - 16.0 / (2.0 * eps * eps);
    CHECK(g3.eval(x) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("s_eps: singularizer with nonvanishing derivative") {
    for (int order : {1, 2, 3}) {
        CAPTURE(order);
        double eps = 0.3;
        PiecewiseSmoothFn s = s_eps(order, eps);
        CHECK(s.singular_at_zero);
        CHECK(s.c1_defect() < 1e-9);
        CHECK(s.min_abs_derivative(-0.99 * eps, 0.99 * eps) > 0.0);
        // near zero: the pure b-potential
        double z = 0.1 * eps;
        double expect = order == 1 ? std::log(z)
                                   : -1.0 / ((order - 1) * std::pow(z, order - 1));
        CHECK(s.eval(z) == doctest::Approx(expect).epsilon(1e-12));
        // outer band: the identity, with the parity twist on the left
        CHECK(s.eval(0.9 * eps) == doctest::Approx(0.9 * eps).epsilon(1e-12));
        double left = s.eval(-0.9 * eps);
        double expect_left = (order % 2 == 0 ? 1.0 : -1.0) * (-0.9 * eps);
        CHECK(left == doctest::Approx(expect_left).epsilon(1e-12));
    }
}

TEST_CASE("surface offset constant glues the negative tail") {
    double eps = 0.4;
    CHECK(surface_offset_constant(1, eps) ==
          doctest::Approx(eps - 2.0 * std::log(eps / 2.0)));
    CHECK(surface_offset_constant(3, eps) == doctest::Approx(16.0 / (2.0 * eps * eps)));
    // continuity of k*g_eps against (-1)^m H - k C at z = -eps, k = 1
    for (int order : {1, 2, 3, 4}) {
        CAPTURE(order);
        PiecewiseSmoothFn g = g_eps(order, eps);
        double z = -eps * (1.0 - 1e-12);
        double u = order == 1 ? std::log(-z) : -1.0 / ((order - 1) * std::pow(z, order - 1));
        double sign = order % 2 == 0 ? 1.0 : -1.0;
        double outer = sign * u - surface_offset_constant(order, eps);
        CHECK(g.eval(z) == doctest::Approx(outer).epsilon(1e-9));
    }
}

TEST_CASE("evaluation on the critical set is rejected") {
    PiecewiseSmoothFn s = s_eps(1, 0.3);
    CHECK_THROWS_AS(s.piece_at(0.0), std::domain_error);
}
