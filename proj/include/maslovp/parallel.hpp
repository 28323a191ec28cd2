#pragma once

#include <cstddef>
#include <functional>

namespace maslovp {

/// Number of worker threads used by parallel_for. Defaults to the number of
/// logical cores; 0 restores the default.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once and
/// results must be written to per-index slots, so output never depends on
/// scheduling. If bodies throw, the exception of the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace maslovp
