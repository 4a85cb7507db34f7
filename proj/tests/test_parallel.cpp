#include <doctest.h>

#include <cmath>

#include "bsing/parallel.hpp"

using namespace bsing;

TEST_CASE("parallel grid reductions equal the serial references") {
    auto f = [](std::size_t i) {
        double x = 0.001 * double(i);
        return std::sin(3.0 * x) + 0.2 * std::cos(17.0 * x);
    };
    const std::size_t n = 100000;
    CHECK(par::max_over_grid(n, f) == par::max_over_grid_serial(n, f));
    CHECK(par::min_over_grid(n, f) == par::min_over_grid_serial(n, f));
}

TEST_CASE("indexed map lands results in deterministic slots") {
    auto f = [](std::size_t i) { return double(i) * 1.5 - 3.0; };
    auto a = par::map_indexed<double>(5000, f);
    auto b = par::map_indexed_serial<double>(5000, f);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
