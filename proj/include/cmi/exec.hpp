#pragma once

#include <cstddef>
#include <functional>

namespace cmi {

// Serial reference loop and the OpenMP path it must match. Kernels written
// against for_each_index store per-index results into preallocated slots and
// reduce serially afterwards, so both modes produce identical output.
enum class ExecMode { serial, parallel };

int max_threads();
void set_thread_count(int threads); // 0 leaves the runtime default

void for_each_index(std::size_t count, ExecMode mode,
                    const std::function<void(std::size_t)>& body);

} // namespace cmi
