#pragma once

#include <cstddef>
#include <vector>

#ifdef WAVETAIL_HAS_OPENMP
#include <omp.h>
#endif

namespace wavetail {

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; Parallel uses OpenMP. Reductions accumulate fixed-size
// blocks and combine them in index order, so results are byte-identical for
// any thread count.
enum class Exec { Serial, Parallel };

inline Exec default_exec() {
#ifdef WAVETAIL_HAS_OPENMP
    return Exec::Parallel;
#else
    return Exec::Serial;
#endif
}

template <class Fn>
inline void parallel_for(std::size_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::Parallel) {
#ifdef WAVETAIL_HAS_OPENMP
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) fn(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline constexpr std::size_t kReduceBlock = 1024;

// Deterministic sum: per-block partials summed left to right.
template <class Fn>
inline double block_sum(std::size_t n, Exec exec, Fn&& fn) {
    std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> partial(nblocks, 0.0);
    parallel_for(nblocks, exec, [&](std::size_t b) {
        double s = 0.0;
        std::size_t lo = b * kReduceBlock;
        std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
        for (std::size_t i = lo; i < hi; ++i) s += fn(i);
        partial[b] = s;
    });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

template <class Fn>
inline double block_max(std::size_t n, Exec exec, Fn&& fn) {
    std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> partial(nblocks, 0.0);
    parallel_for(nblocks, exec, [&](std::size_t b) {
        double m = 0.0;
        std::size_t lo = b * kReduceBlock;
        std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
        for (std::size_t i = lo; i < hi; ++i) {
            double v = fn(i);
            if (v > m) m = v;
        }
        partial[b] = m;
    });
    double total = 0.0;
    for (double m : partial)
        if (m > total) total = m;
    return total;
}

}  // namespace wavetail
