#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracdyn {

/// Execution mode for data-parallel kernels. Serial is the reference path;
/// results must be bit-identical between the two.
enum class Exec { serial, openmp };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(0..count-1). Iterations must be independent and write only to
/// their own output slots; under OpenMP the first thrown exception (lowest
/// index) is rethrown after the loop completes.
template <class F>
void parallel_for(std::size_t count, Exec exec, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::openmp && count > 1) {
        std::exception_ptr error = nullptr;
        std::size_t error_index = count;
#pragma omp parallel for schedule(static)
        for (long long t = 0; t < static_cast<long long>(count); ++t) {
            try {
                body(static_cast<std::size_t>(t));
            } catch (...) {
#pragma omp critical(fracdyn_parallel_for_error)
                {
                    if (static_cast<std::size_t>(t) < error_index) {
                        error_index = static_cast<std::size_t>(t);
                        error = std::current_exception();
                    }
                }
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t t = 0; t < count; ++t) body(t);
}

}  // namespace fracdyn
