// Execution policy for the data-parallel loops (roof restarts, suite
// samples). Work items are independent and write to disjoint slots, so the
// serial path is the reference implementation and the OpenMP path must
// produce bit-identical results; tests compare the two.

#pragma once

#include <cstddef>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qcoh {

enum class Exec { serial, parallel };

template <typename Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::parallel) {
#if defined(_OPENMP)
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) {
        fn(i);
    }
}

inline bool openmp_enabled() {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

} // namespace qcoh
