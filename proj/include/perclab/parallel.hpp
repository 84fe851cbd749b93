#pragma once

#include <cstdint>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perc {

// Trial-level parallelism. Each trial writes only to its own slot (the body
// receives the trial index), so the OpenMP and serial paths produce identical
// results and any reduction done afterwards in index order is deterministic.

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <typename Fn>
void run_trials_serial(int64_t n, Fn&& body) {
    for (int64_t i = 0; i < n; ++i) body(i);
}

template <typename Fn>
void run_trials(int64_t n, Fn&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; ++i) body(i);
#else
    run_trials_serial(n, body);
#endif
}

} // namespace perc
