// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached when
// dispatch.cpp has confirmed CPU support.

#include <immintrin.h>

#include <cstddef>
#include <vector>

#include "pclab/simd.hpp"

namespace pclab::simd::avx2 {
namespace {

// pi/2 split into three doubles for Cody-Waite reduction with FMA.
constexpr double kPio2A = 1.5707963267948966;
constexpr double kPio2B = 6.123233995736766e-17;
constexpr double kPio2C = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.63661977236758134308;

// Cephes minimax coefficients on [-pi/4, pi/4].
constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                           2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                           8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                           -2.75573141792967388112e-7, 2.48015872888517045348e-5,
                           -1.38888888888730564116e-3, 4.16666666666665929218e-2};

inline __m256d poly6(__m256d z, const double* c) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
  return p;
}

inline void sincos_pd(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2A), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2B), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2C), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sp = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSin), r);
  const __m256d cz = _mm256_mul_pd(z, z);
  const __m256d cp = _mm256_fmadd_pd(cz, poly6(z, kCos),
                                     _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z,
                                                      _mm256_set1_pd(1.0)));

  // quadrant bookkeeping on 64-bit lanes
  const __m256i qi = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
  const __m256d neg_s =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, two), two));
  const __m256d neg_c = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
      _mm256_and_si256(_mm256_add_epi64(qi, one), two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);

  __m256d s = _mm256_blendv_pd(sp, cp, swap);
  __m256d c = _mm256_blendv_pd(cp, sp, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign));
  c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign));
  s_out = s;
  c_out = c;
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

}  // namespace

void sincos4(const double* x, double* s, double* c) {
  __m256d vs, vc;
  sincos_pd(_mm256_loadu_pd(x), vs, vc);
  _mm256_storeu_pd(s, vs);
  _mm256_storeu_pd(c, vc);
}

CisSum cis_sum(std::span<const double> amp, std::span<const double> phase) {
  const std::size_t n = amp.size();
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s, c;
    sincos_pd(_mm256_loadu_pd(phase.data() + i), s, c);
    const __m256d a = _mm256_loadu_pd(amp.data() + i);
    re = _mm256_fmadd_pd(a, c, re);
    im = _mm256_fmadd_pd(a, s, im);
  }
  if (i < n) {
    alignas(32) double a[4] = {0, 0, 0, 0};
    alignas(32) double p[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; i + j < n; ++j) {
      a[j] = amp[i + j];
      p[j] = phase[i + j];
    }
    __m256d s, c;
    sincos_pd(_mm256_load_pd(p), s, c);
    const __m256d av = _mm256_load_pd(a);
    re = _mm256_fmadd_pd(av, c, re);
    im = _mm256_fmadd_pd(av, s, im);
  }
  return {hsum(re), hsum(im)};
}

void cos_sweep_accumulate(std::span<const double> weight,
                          std::span<const double> phase, double a0, double da,
                          std::span<double> acc) {
  const std::size_t n = weight.size();
  const std::size_t steps = acc.size();
  if (n == 0 || steps == 0) return;

  // one 4-lane accumulator per sweep step, reduced at the end
  std::vector<double> lanes(4 * steps, 0.0);
  const __m256d vda = _mm256_set1_pd(da);

  for (std::size_t i = 0; i < n; i += 4) {
    alignas(32) double wbuf[4] = {0, 0, 0, 0};
    alignas(32) double pbuf[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < 4 && i + j < n; ++j) {
      wbuf[j] = weight[i + j];
      pbuf[j] = phase[i + j];
    }
    const __m256d w = _mm256_load_pd(wbuf);
    const __m256d p = _mm256_load_pd(pbuf);
    __m256d rs, rc;
    sincos_pd(_mm256_mul_pd(p, vda), rs, rc);

    __m256d c = _mm256_setzero_pd();
    __m256d s = _mm256_setzero_pd();
    for (std::size_t k = 0; k < steps; ++k) {
      if (k % kResyncInterval == 0) {
        const double a = a0 + static_cast<double>(k) * da;
        sincos_pd(_mm256_mul_pd(p, _mm256_set1_pd(a)), s, c);
      }
      double* lane = lanes.data() + 4 * k;
      _mm256_storeu_pd(lane, _mm256_fmadd_pd(w, c, _mm256_loadu_pd(lane)));
      const __m256d cn = _mm256_fmsub_pd(c, rc, _mm256_mul_pd(s, rs));
      s = _mm256_fmadd_pd(s, rc, _mm256_mul_pd(c, rs));
      c = cn;
    }
  }
  for (std::size_t k = 0; k < steps; ++k) acc[k] += hsum(_mm256_loadu_pd(lanes.data() + 4 * k));
}

}  // namespace pclab::simd::avx2
