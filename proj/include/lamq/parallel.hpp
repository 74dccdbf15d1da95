#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lamq {

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/* Data-parallel loop over [0, n).  Iterations must be independent; callers
 * that collect results index a preallocated slot per iteration so the output
 * does not depend on the schedule.  Pick a small grain for coarse per-item
 * work (a whole classification) and a large one for micro-items (one
 * subspace closure test). */
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, int grain = 64) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, grain)
    for (long long i = 0; i < (long long)n; ++i) fn((std::size_t)i);
#else
    (void)grain;
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

constexpr std::size_t npos_index = ~(std::size_t)0;

/* Smallest index in [0, n) where pred holds, or npos_index.  The minimum
 * reduction makes the parallel answer identical to a serial left-to-right
 * scan. */
template <typename Pred>
std::size_t parallel_find_min_index(std::size_t n, Pred&& pred) {
    std::size_t best = npos_index;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::size_t local = npos_index;
#pragma omp for schedule(dynamic, 64) nowait
        for (long long i = 0; i < (long long)n; ++i)
            if ((std::size_t)i < local && pred((std::size_t)i)) local = (std::size_t)i;
#pragma omp critical
        if (local < best) best = local;
    }
#else
    for (std::size_t i = 0; i < n; ++i)
        if (pred(i)) { best = i; break; }
#endif
    return best;
}

}  // namespace lamq
