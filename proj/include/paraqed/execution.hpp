#pragma once

// Serial and OpenMP execution of independent index ranges. Each index writes
// only its own output slot, so both paths produce bit-identical results.

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace paraqed {

enum class Execution { serial, parallel };

/// Number of OpenMP threads used by parallel loops (0 keeps the runtime default).
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [0, n). An exception from any index is rethrown
/// after the loop; when several indices fail, the lowest one wins.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    std::mutex guard;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

} // namespace paraqed
