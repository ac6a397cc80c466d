#ifndef MOWST_PARALLEL_HPP
#define MOWST_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mowst {

/// OpenMP-backed index loop. Bodies must write to disjoint slots only, so
/// results are bitwise identical to the serial reference kernels regardless
/// of thread count. Reductions are done serially by the callers afterwards.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace mowst

#endif
