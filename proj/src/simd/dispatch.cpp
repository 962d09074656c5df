#include <atomic>
#include <cstdlib>
#include <string>

#include "pclab/simd.hpp"

namespace pclab::simd {
namespace {

// -1 automatic, otherwise static_cast<int>(Backend)
std::atomic<int> g_forced{-1};

Backend detect() {
  if (const char* env = std::getenv("PCLAB_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && avx2_available()) return Backend::avx2;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

}  // namespace

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if defined(PCLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  static const Backend detected = detect();
  return detected;
}

void force_backend(std::optional<Backend> b) {
  if (b && *b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  g_forced.store(b ? static_cast<int>(*b) : -1, std::memory_order_relaxed);
}

CisSum cis_sum(std::span<const double> amp, std::span<const double> phase) {
#if defined(PCLAB_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::cis_sum(amp, phase);
#endif
  return scalar::cis_sum(amp, phase);
}

void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc) {
#if defined(PCLAB_HAVE_AVX2)
  if (active_backend() == Backend::avx2) {
    avx2::cos_sweep_accumulate(weight, phase, a0, da, acc);
    return;
  }
#endif
  scalar::cos_sweep_accumulate(weight, phase, a0, da, acc);
}

}  // namespace pclab::simd
