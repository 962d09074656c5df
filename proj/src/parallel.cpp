#include "pclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pclab/error.hpp"

namespace pclab {
namespace {

std::atomic<std::size_t> g_override{0};

std::size_t default_workers() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PCLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::coverage: return "coverage";
    case ErrorKind::validation: return "validation";
    case ErrorKind::wrong_file: return "wrong-file";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::io: return "io";
    case ErrorKind::resource: return "resource";
    case ErrorKind::pole: return "pole";
    case ErrorKind::height_cap: return "height-cap";
    case ErrorKind::near_singularity: return "near-singularity";
    case ErrorKind::missed_zero: return "missed-zero";
    case ErrorKind::domain: return "domain";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

std::size_t worker_count() {
  const std::size_t o = g_override.load(std::memory_order_relaxed);
  if (o > 0) return o;
  static const std::size_t d = default_workers();
  return d;
}

void set_worker_count(std::size_t n) { g_override.store(n, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pclab
