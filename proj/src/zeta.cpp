#include "pclab/zeta.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pclab/arith.hpp"
#include "pclab/error.hpp"
#include "pclab/simd.hpp"
#include "pclab/summation.hpp"

namespace pclab {
namespace {

#include "rs_coefficients.inc"

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxEmOrder = 60;
constexpr std::int64_t kMaxDirectTerms = 50'000'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_2k / (2k)! for k = 1..kMaxEmOrder + 1
const std::array<double, kMaxEmOrder + 2>& bernoulli_ratios() {
  static const auto table = [] {
    std::array<double, kMaxEmOrder + 2> a{};
    for (int k = 1; k <= kMaxEmOrder + 1; ++k) {
      a[k] = boost::math::bernoulli_b2n<double>(k) /
             boost::math::factorial<double>(static_cast<unsigned>(2 * k));
    }
    return a;
  }();
  return table;
}

struct DirectSum {
  cplx value;
  cplx derivative;
  double rounding = 0.0;
};

// sum_{n < N} n^-s and its s-derivative
DirectSum direct_sum(cplx s, std::int64_t N, bool with_derivative) {
  const double sigma = s.real();
  const double t = s.imag();
  const auto count = static_cast<std::size_t>(N - 1);
  std::vector<double> amp(count);
  std::vector<double> phase(count);
  double rounding = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double ln = std::log(static_cast<double>(i + 1));
    amp[i] = std::exp(-sigma * ln);
    phase[i] = -t * ln;
    rounding += amp[i] * kEps * (4.0 + std::abs(phase[i]));
  }
  DirectSum out;
  const auto v = simd::cis_sum(amp, phase);
  out.value = {v.re, v.im};
  out.rounding = rounding;
  if (with_derivative) {
    for (std::size_t i = 0; i < count; ++i) amp[i] *= -std::log(static_cast<double>(i + 1));
    const auto d = simd::cis_sum(amp, phase);
    out.derivative = {d.re, d.im};
  }
  return out;
}

ZetaEvaluation euler_maclaurin(cplx s, double tol, bool with_derivative) {
  require(!(s.real() == 1.0 && s.imag() == 0.0), ErrorKind::pole, "zeta has a pole at s = 1");
  require(std::abs(s.imag()) <= kZetaHeightCap, ErrorKind::height_cap,
          "|Im s| above the desk-scale height cap 1e5");
  require(tol >= kZetaMinTolerance, ErrorKind::invalid_argument,
          "zeta tolerance must be >= 1e-12");
  const auto& br = bernoulli_ratios();
  const double sigma = s.real();
  auto N = static_cast<std::int64_t>(std::ceil(std::abs(s) / kTwoPi)) + 8;

  for (;;) {
    require(N <= kMaxDirectTerms, ErrorKind::height_cap,
            "zeta tolerance not reachable within the direct-sum limit");
    const double Nd = static_cast<double>(N);
    const double logN = std::log(Nd);
    const cplx Ns = std::exp(-s * logN);  // N^-s
    cplx tail = Nd * Ns / (s - 1.0) + 0.5 * Ns;
    cplx dtail = -logN * Nd * Ns / (s - 1.0) - Nd * Ns / ((s - 1.0) * (s - 1.0)) -
                 0.5 * logN * Ns;

    // P_k(s) = s (s+1) ... (s+2k-2) and its derivative
    cplx P = s;
    cplx dP = 1.0;
    cplx Npow = Ns / Nd;  // N^(-s-2k+1) at k = 1
    bool converged = false;
    int order = 0;
    double bound = 0.0;
    double dbound = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kMaxEmOrder; ++k) {
      const cplx term = br[k] * P * Npow;
      const double mag = std::abs(term);
      if (mag > prev_mag) break;  // asymptotic series turned around; need larger N
      prev_mag = mag;
      tail += term;
      if (with_derivative) dtail += br[k] * Npow * (dP - logN * P);
      // advance to k + 1 for the remainder estimate
      const cplx f1 = s + static_cast<double>(2 * k - 1);
      const cplx f2 = s + static_cast<double>(2 * k);
      dP = dP * f1 * f2 + P * (f1 + f2);
      P = P * f1 * f2;
      Npow /= Nd * Nd;
      const double denom = sigma + 2.0 * k + 1.0;
      if (denom <= 0.0) continue;
      const double factor = std::abs(s + static_cast<double>(2 * k + 1)) / denom;
      const cplx next = br[k + 1] * P * Npow;
      bound = factor * std::abs(next);
      dbound = factor * std::abs(br[k + 1] * Npow * (dP - logN * P));
      order = k;
      if (bound < 0.5 * tol && (!with_derivative || dbound < 0.5 * tol * (1.0 + logN))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      N = N + N / 2 + 1;
      continue;
    }
    const DirectSum direct = direct_sum(s, N, with_derivative);
    ZetaEvaluation ev;
    ev.s = s;
    ev.value = direct.value + tail;
    if (with_derivative) ev.derivative = direct.derivative + dtail;
    ev.em_order = order;
    ev.terms = N;
    ev.error_estimate = bound;
    ev.rounding_estimate = direct.rounding;
    return ev;
  }
}

cplx log_gamma_stirling(cplx z) {
  // shift so that Re w >= 10, then Stirling with 8 correction terms
  constexpr int kShift = 10;
  cplx w = z + static_cast<double>(kShift);
  cplx shift_sum = 0.0;
  for (int j = 0; j < kShift; ++j) shift_sum += std::log(z + static_cast<double>(j));
  cplx series = 0.0;
  const cplx w2 = w * w;
  cplx wp = w;
  for (int k = 1; k <= 8; ++k) {
    series += boost::math::bernoulli_b2n<double>(k) / (2.0 * k * (2.0 * k - 1.0)) / wp;
    wp *= w2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(kTwoPi) + series - shift_sum;
}

double horner(const double* c, std::size_t n, double z) {
  double v = 0.0;
  for (std::size_t i = n; i-- > 0;) v = v * z + c[i];
  return v;
}

}  // namespace

ZetaEvaluation zeta(cplx s, double tol) { return euler_maclaurin(s, tol, false); }

ZetaEvaluation zeta_and_derivative(cplx s, double tol) { return euler_maclaurin(s, tol, true); }

cplx log_deriv_zeta(cplx s, double tol) {
  const ZetaEvaluation ev = zeta_and_derivative(s, tol);
  require(std::abs(ev.derivative) > 0.0 && std::abs(ev.value / ev.derivative) >= 1e-6,
          ErrorKind::near_singularity, "zeta'/zeta evaluated within 1e-6 of a zero");
  return ev.derivative / ev.value;
}

SeriesValue log_deriv_zeta_series(cplx s, const PrimeTable& table) {
  require(s.real() > 1.0, ErrorKind::domain, "Dirichlet series for zeta'/zeta needs Re s > 1");
  const auto pp = table.prime_powers();
  const auto base = table.prime_power_bases();
  std::vector<double> amp(pp.size());
  std::vector<double> phase(pp.size());
  for (std::size_t i = 0; i < pp.size(); ++i) {
    const double ln = std::log(static_cast<double>(pp[i]));
    amp[i] = std::log(static_cast<double>(base[i])) * std::exp(-s.real() * ln);
    phase[i] = -s.imag() * ln;
  }
  const auto v = simd::cis_sum(amp, phase);
  const double M = static_cast<double>(table.limit());
  // sum_{n > M} Lambda(n) n^-s ~ int_M^inf u^-s du = M^(1-s)/(s-1)
  const cplx smooth = std::exp((1.0 - s) * std::log(M)) / (s - 1.0);
  SeriesValue out;
  out.value = -cplx(v.re, v.im) - smooth;
  // |psi(u) - u| <= u^0.5 log^2 u is far more than enough at these limits
  const double lm = std::log(M);
  out.tail_bound = std::abs(s) * std::pow(M, 0.5 - s.real()) * lm * lm / (s.real() - 0.5);
  return out;
}

double riemann_siegel_theta(double t) {
  require(t > 0.0, ErrorKind::invalid_argument, "theta needs t > 0");
  if (t < 50.0) {
    return std::imag(log_gamma_stirling(cplx(0.25, 0.5 * t))) - 0.5 * t * std::log(kPi);
  }
  const double it = 1.0 / t;
  const double it2 = it * it;
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 +
         it * (1.0 / 48.0 +
               it2 * (7.0 / 5760.0 + it2 * (31.0 / 80640.0 + it2 * (127.0 / 430080.0))));
}

double hardy_Z_euler_maclaurin(double t) {
  require(t >= 2.0, ErrorKind::out_of_range, "Hardy Z needs t >= 2");
  const ZetaEvaluation ev = zeta(cplx(0.5, t), kZetaMinTolerance);
  const double th = riemann_siegel_theta(t);
  return std::real(std::polar(1.0, th) * ev.value);
}

double hardy_Z_riemann_siegel(double t) {
  require(t >= 2.0, ErrorKind::out_of_range, "Hardy Z needs t >= 2");
  require(t <= kZetaHeightCap, ErrorKind::height_cap, "Hardy Z above height cap");
  const double a = std::sqrt(t / kTwoPi);
  const auto N = static_cast<std::int64_t>(std::floor(a));
  const double th = riemann_siegel_theta(t);
  std::vector<double> amp(static_cast<std::size_t>(N));
  std::vector<double> phase(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    amp[n - 1] = 1.0 / std::sqrt(static_cast<double>(n));
    phase[n - 1] = th - t * ln;
  }
  const double main = 2.0 * simd::cis_sum(amp, phase).re;

  const double z = a - static_cast<double>(N) - 0.5;
  const double ia = 1.0 / a;
  const double corr =
      horner(kRsC0, std::size(kRsC0), z) +
      ia * (horner(kRsC1, std::size(kRsC1), z) +
            ia * (horner(kRsC2, std::size(kRsC2), z) +
                  ia * (horner(kRsC3, std::size(kRsC3), z) +
                        ia * horner(kRsC4, std::size(kRsC4), z))));
  const double sign = (N - 1) % 2 == 0 ? 1.0 : -1.0;
  return main + sign * std::sqrt(ia) * corr;
}

double hardy_Z(double t) {
  return t < kRiemannSiegelSwitch ? hardy_Z_euler_maclaurin(t) : hardy_Z_riemann_siegel(t);
}

double gram_point(std::int64_t n) {
  require(n >= -1, ErrorKind::invalid_argument, "Gram points start at n = -1");
  const double m = static_cast<double>(n) + 0.125;
  double t = kTwoPi * m / boost::math::lambert_w0(m / std::numbers::e);
  const double target = static_cast<double>(n) * kPi;
  for (int it = 0; it < 100; ++it) {
    const double f = riemann_siegel_theta(t) - target;
    const double d = 0.5 * std::log(t / kTwoPi);
    const double step = f / d;
    t -= step;
    if (std::abs(step) <= 4.0 * kEps * t) break;
  }
  return t;
}

}  // namespace pclab
