#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, when the build and the CPU allow it, an AVX2/FMA
// variant. The active variant is chosen once at runtime; PCLAB_SIMD=scalar
// (or avx2) in the environment forces a choice.

#include <optional>
#include <span>
#include <string_view>

namespace pclab::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
bool avx2_available();
Backend active_backend();

// Test hook; std::nullopt restores automatic selection.
void force_backend(std::optional<Backend> b);

struct CisSum {
  double re = 0.0;
  double im = 0.0;
};

// sum_i amp[i] * exp(i * phase[i]), returned as (real, imaginary) parts.
CisSum cis_sum(std::span<const double> amp, std::span<const double> phase);

// acc[k] += sum_i weight[i] * cos(phase[i] * (a0 + k * da)) for every k.
// The sweep rotates each phasor by exp(i phase da) and re-seeds it from a
// direct sincos every kResyncInterval steps, so the result is accurate to a
// few ulps of sum |weight| for the angles met in practice (< 1e7).
void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc);

inline constexpr int kResyncInterval = 32;

namespace scalar {
CisSum cis_sum(std::span<const double> amp, std::span<const double> phase);
void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc);
}  // namespace scalar

#if defined(PCLAB_HAVE_AVX2)
namespace avx2 {
CisSum cis_sum(std::span<const double> amp, std::span<const double> phase);
void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc);
// Vector sincos on 4 lanes; exposed for the equivalence tests.
void sincos4(const double* x, double* s, double* c);
}  // namespace avx2
#endif

}  // namespace pclab::simd
