#include "cmi/exec.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmi {

#ifdef _OPENMP

int max_threads() {
    return omp_get_max_threads();
}

void set_thread_count(int threads) {
    if (threads < 0)
        throw std::invalid_argument("thread count must be >= 0");
    if (threads > 0) omp_set_num_threads(threads);
}

void for_each_index(std::size_t count, ExecMode mode,
                    const std::function<void(std::size_t)>& body) {
    if (mode == ExecMode::serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const long long signed_count = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < signed_count; ++i) body(static_cast<std::size_t>(i));
}

#else

int max_threads() {
    return 1;
}

void set_thread_count(int threads) {
    if (threads < 0)
        throw std::invalid_argument("thread count must be >= 0");
}

void for_each_index(std::size_t count, ExecMode /*mode*/,
                    const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < count; ++i) body(i);
}

#endif

} // namespace cmi
