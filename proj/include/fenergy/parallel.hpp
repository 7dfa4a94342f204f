#pragma once

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace fenergy {

/// Thread budget: min(omp_get_max_threads(), FENERGY_THREADS).  Returns 1
/// when built without OpenMP.
int thread_budget();

/// Parallel loop over [0, n).  The body must write only to its own slot of
/// preallocated output; with that discipline the result is identical for any
/// thread count.
template <class Body>
void parallel_for(std::ptrdiff_t n, const Body& body) {
#if defined(_OPENMP)
    const int nt = thread_budget();
    if (nt > 1 && n > 256) {
#pragma omp parallel for schedule(static) num_threads(nt)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace fenergy
