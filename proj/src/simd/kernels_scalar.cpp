#include <cmath>
#include <cstddef>

#include "pclab/simd.hpp"

namespace pclab::simd::scalar {

CisSum cis_sum(std::span<const double> amp, std::span<const double> phase) {
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = amp.size();
  for (std::size_t i = 0; i < n; ++i) {
    re += amp[i] * std::cos(phase[i]);
    im += amp[i] * std::sin(phase[i]);
  }
  return {re, im};
}

void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc) {
  const std::size_t n = weight.size();
  const std::size_t steps = acc.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight[i];
    const double p = phase[i];
    const double rc = std::cos(p * da);
    const double rs = std::sin(p * da);
    double c = 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      if (k % kResyncInterval == 0) {
        const double a = p * (a0 + static_cast<double>(k) * da);
        c = std::cos(a);
        s = std::sin(a);
      }
      acc[k] += w * c;
      const double cn = c * rc - s * rs;
      s = s * rc + c * rs;
      c = cn;
    }
  }
}

}  // namespace pclab::simd::scalar
