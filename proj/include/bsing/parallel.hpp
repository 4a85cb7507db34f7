#pragma once

#include <cstddef>
#include <cstdlib>
#include <vector>

#ifdef BSING_HAVE_OPENMP
#include <omp.h>
#endif

namespace bsing::par {

/// Thread cap honoring the BSING_THREADS environment variable (0 = default).
inline int thread_cap() {
    if (const char* env = std::getenv("BSING_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;
}

#ifdef BSING_HAVE_OPENMP
inline int effective_threads() {
    int cap = thread_cap();
    int hw = omp_get_max_threads();
    return cap > 0 && cap < hw ? cap : hw;
}
#else
inline int effective_threads() { return 1; }
#endif

// Grid reductions. The parallel kernels and the serial references below must
// produce identical results: reductions are order-insensitive (max/min) and
// the map kernels write to disjoint preallocated slots before a serial merge.

template <class F>
double max_over_grid_serial(std::size_t n, F&& f) {
    double best = f(std::size_t{0});
    for (std::size_t i = 1; i < n; ++i) {
        double v = f(i);
        if (v > best) best = v;
    }
    return best;
}

template <class F>
double min_over_grid_serial(std::size_t n, F&& f) {
    double best = f(std::size_t{0});
    for (std::size_t i = 1; i < n; ++i) {
        double v = f(i);
        if (v < best) best = v;
    }
    return best;
}

template <class F>
double max_over_grid(std::size_t n, F&& f) {
#ifdef BSING_HAVE_OPENMP
    double best = f(std::size_t{0});
#pragma omp parallel for reduction(max : best) num_threads(effective_threads())
    for (long long i = 1; i < (long long)n; ++i) {
        double v = f((std::size_t)i);
        if (v > best) best = v;
    }
    return best;
#else
    return max_over_grid_serial(n, f);
#endif
}

template <class F>
double min_over_grid(std::size_t n, F&& f) {
#ifdef BSING_HAVE_OPENMP
    double best = f(std::size_t{0});
#pragma omp parallel for reduction(min : best) num_threads(effective_threads())
    for (long long i = 1; i < (long long)n; ++i) {
        double v = f((std::size_t)i);
        if (v < best) best = v;
    }
    return best;
#else
    return min_over_grid_serial(n, f);
#endif
}

/// Map i -> R over [0, n); results land in index order regardless of the
/// thread schedule, so downstream merges are deterministic.
template <class R, class F>
std::vector<R> map_indexed_serial(std::size_t n, F&& f) {
    std::vector<R> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

template <class R, class F>
std::vector<R> map_indexed(std::size_t n, F&& f) {
#ifdef BSING_HAVE_OPENMP
    std::vector<R> out(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(effective_threads())
    for (long long i = 0; i < (long long)n; ++i) out[(std::size_t)i] = f((std::size_t)i);
    return out;
#else
    return map_indexed_serial<R>(n, f);
#endif
}

}  // namespace bsing::par
