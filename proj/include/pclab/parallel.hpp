#pragma once

#include <cstddef>
#include <functional>

namespace pclab {

// Number of worker threads. Defaults to the hardware concurrency, capped by
// the PCLAB_THREADS environment variable, and overridable for tests.
std::size_t worker_count();

// 0 restores the environment/hardware default.
void set_worker_count(std::size_t n);

// Runs task(i) for every i in [0, n). Tasks are claimed dynamically, so the
// caller must make results independent of which thread ran which index
// (store per-index results and reduce them in index order).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace pclab
