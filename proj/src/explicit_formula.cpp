#include "pclab/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pclab/error.hpp"
#include "pclab/simd.hpp"
#include "pclab/zeta.hpp"

namespace pclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double resolve_height(const ZeroTable& table, double T) {
  if (T <= 0.0) return table.t_max();
  require(T <= table.t_max(), ErrorKind::coverage,
          "zero height " + std::to_string(T) + " above table coverage " +
              std::to_string(table.t_max()));
  return T;
}

// ordinates <= T with multiplicities
std::size_t zeros_upto(const ZeroTable& table, double T) {
  const auto ord = table.ordinates();
  return static_cast<std::size_t>(std::upper_bound(ord.begin(), ord.end(), T) - ord.begin());
}

// generous density envelope used for the zero-sum tails
double density_envelope(double T) { return 3.0 * std::log(std::max(T, 20.0)); }

}  // namespace

double a_weight(std::uint64_t n, double x) {
  require(n >= 1 && x >= 1.0, ErrorKind::invalid_argument, "a_weight needs n >= 1, x >= 1");
  const double r = static_cast<double>(n) / x;
  return std::min(std::sqrt(r), std::pow(1.0 / r, 1.5));
}

double zero_sum(double x, const ZeroTable& table, double T) {
  require(x > 0.0, ErrorKind::invalid_argument, "zero_sum needs x > 0");
  T = resolve_height(table, T);
  const std::size_t n = zeros_upto(table, T);
  const auto ord = table.ordinates();
  const double lx = std::log(x);
  std::vector<double> amp(n);
  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = ord[i];
    amp[i] = table.multiplicity(i) / std::hypot(0.5, g);
    phase[i] = g * lx - std::atan2(g, 0.5);
  }
  return 2.0 * std::sqrt(x) * simd::cis_sum(amp, phase).re;
}

ExplicitEvalReport psi_from_zeros(double x, const ZeroTable& table, double T,
                                  const PrimeTable& primes) {
  require(x > 1.0, ErrorKind::invalid_argument, "psi_from_zeros needs x > 1");
  T = resolve_height(table, T);
  ExplicitEvalReport r;
  r.x = x;
  r.zero_height = T;
  r.prime_cutoff = static_cast<double>(primes.limit());
  const double lhs = x - zero_sum(x, table, T) - std::log(kTwoPi) - 0.5 * std::log1p(-1.0 / (x * x));
  r.lhs = lhs;
  r.rhs = chebyshev_psi(x, primes, true);
  r.residual = std::abs(r.lhs - r.rhs);
  const double dist = std::abs(x - std::round(x));
  const double lxt = std::log(x * T);
  r.truncation_estimate = x / T * lxt * lxt +
                          std::log(x) * (dist > 0.0 ? std::min(1.0, x / (T * dist)) : 1.0);
  return r;
}

double landau_detect(double x, const ZeroTable& table, double T) {
  require(x > 1.0, ErrorKind::invalid_argument, "landau_detect needs x > 1");
  T = resolve_height(table, T);
  const std::size_t n = zeros_upto(table, T);
  const auto ord = table.ordinates();
  const double lx = std::log(x);
  std::vector<double> amp(n);
  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    amp[i] = table.multiplicity(i);
    phase[i] = ord[i] * lx;
  }
  return -(kTwoPi / T) * std::sqrt(x) * simd::cis_sum(amp, phase).re;
}

MontgomeryReport montgomery_formula(double x, double t, const ZeroTable& zeros,
                                    const PrimeTable& primes, const MontgomeryOptions& options) {
  require(x >= 1.0, ErrorKind::invalid_argument, "montgomery_formula needs x >= 1");
  const double Tz = resolve_height(zeros, options.zero_height);
  require(Tz >= std::abs(t) + 100.0, ErrorKind::coverage,
          "zero coverage must reach at least |t| + 100 for the Montgomery formula");
  const std::uint64_t M = options.prime_cutoff == 0 ? primes.limit() : options.prime_cutoff;
  require(M <= primes.limit(), ErrorKind::coverage, "prime cutoff above sieve limit");
  require(static_cast<double>(M) > x, ErrorKind::invalid_argument,
          "prime cutoff must exceed x");

  const double lx = std::log(x);
  const auto ord = zeros.ordinates();
  const std::size_t nz = zeros_upto(zeros, Tz);

  // sum over gamma and -gamma of x^(i gamma) / (1 + (t - gamma)^2)
  std::vector<double> amp(2 * nz);
  std::vector<double> phase(2 * nz);
  for (std::size_t i = 0; i < nz; ++i) {
    const double g = ord[i];
    const double m = zeros.multiplicity(i);
    amp[2 * i] = m / (1.0 + (t - g) * (t - g));
    phase[2 * i] = g * lx;
    amp[2 * i + 1] = m / (1.0 + (t + g) * (t + g));
    phase[2 * i + 1] = -g * lx;
  }
  const auto zs = simd::cis_sum(amp, phase);
  const cplx x_half_mit = std::exp(cplx(0.5 * lx, -t * lx));
  const cplx lhs = 2.0 * x_half_mit * cplx(zs.re, zs.im);

  // sum_{n <= M} Lambda(n) a_n(x) n^(-it)
  const auto pp = primes.prime_powers();
  const auto base = primes.prime_power_bases();
  amp.clear();
  phase.clear();
  for (std::size_t i = 0; i < pp.size() && pp[i] <= M; ++i) {
    amp.push_back(std::log(static_cast<double>(base[i])) * a_weight(pp[i], x));
    phase.push_back(-t * std::log(static_cast<double>(pp[i])));
  }
  const auto ps = simd::cis_sum(amp, phase);
  cplx prime_sum(ps.re, ps.im);
  const double Md = static_cast<double>(M);
  // sum_{n > M} Lambda(n) (x/n)^(3/2) n^(-it) ~ x^(3/2) M^(-1/2-it) / (1/2 + it)
  const cplx prime_tail =
      std::pow(x, 1.5) * std::exp(cplx(-0.5, -t) * std::log(Md)) / cplx(0.5, t);
  if (options.tail_corrections) prime_sum += prime_tail;

  const cplx main = 2.0 * std::exp(cplx(lx, -t * lx)) / (cplx(0.5, t) * cplx(1.5, -t));
  const double inv_sqrt_x = 1.0 / std::sqrt(x);

  MontgomeryReport out;
  ExplicitEvalReport& r = out.report;
  r.x = x;
  r.s = cplx(0.0, t);
  r.lhs = lhs;
  r.rhs = -prime_sum + main + inv_sqrt_x * std::log(std::abs(t) + 2.0);
  r.residual = std::abs(r.lhs - r.rhs);
  r.zero_height = Tz;
  r.prime_cutoff = Md;

  // x^-it sum_n x^-2n 2 / ((2n - 1/2 + it)(2n + 3/2 + it))
  cplx trivial = 0.0;
  for (int n = 1; n <= 200; ++n) {
    const double xn = std::exp(-2.0 * n * lx);
    const cplx term = xn * 2.0 / (cplx(2.0 * n - 0.5, t) * cplx(2.0 * n + 1.5, t));
    trivial += term;
    if (std::abs(term) < 1e-18) break;
  }
  trivial *= std::exp(cplx(0.0, -t * lx));
  const cplx ld = log_deriv_zeta(cplx(-0.5, t), 1e-12);
  out.rhs_exact = -prime_sum + main - inv_sqrt_x * ld + trivial;
  out.residual_exact = std::abs(r.lhs - out.rhs_exact);

  const double D = density_envelope(Tz);
  out.zero_tail_bound = 2.0 * std::sqrt(x) * 2.0 * D / (Tz - std::abs(t) - 1.0);
  out.prime_tail = prime_tail;
  r.truncation_estimate = out.zero_tail_bound + inv_sqrt_x +
                          std::pow(x, -2.0) / (std::abs(t) + 2.0) +
                          (options.tail_corrections ? 0.0 : std::abs(prime_tail));
  return out;
}

double lambda_x(std::uint64_t n, double x, const PrimeTable& primes) {
  require(n >= 2 && x > 1.0, ErrorKind::invalid_argument, "lambda_x needs n >= 2, x > 1");
  const double nd = static_cast<double>(n);
  if (nd > x * x) return 0.0;
  const double L = primes.von_mangoldt(n);
  if (L == 0.0 || nd <= x) return L;
  return L * std::log(x * x / nd) / std::log(x);
}

SelbergApprox::SelbergApprox(double x, const PrimeTable& primes)
    : x_(x), sigma1_(0.5 + 1.0 / std::log(x)) {
  require(x >= 4.0, ErrorKind::domain, "Selberg approximation needs x >= 4");
  require(x * x <= static_cast<double>(primes.limit()), ErrorKind::out_of_range,
          "Selberg approximation needs x^2 within the sieve");
  const auto pp = primes.prime_powers();
  for (std::size_t i = 0; i < pp.size() && static_cast<double>(pp[i]) < x * x; ++i) {
    const double ln = std::log(static_cast<double>(pp[i]));
    log_n_.push_back(ln);
    amp_.push_back(lambda_x(pp[i], x, primes) * std::exp(-sigma1_ * ln));
  }
}

SelbergApproxValue SelbergApprox::operator()(double t) const {
  require(t >= 2.0, ErrorKind::domain, "Selberg approximation needs t >= 2");
  require(x_ <= t * t, ErrorKind::domain, "Selberg approximation needs x <= t^2");
  const std::size_t n = amp_.size();
  std::vector<double> a(n);
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = amp_[i] / log_n_[i];
    ph[i] = t * log_n_[i];
  }
  SelbergApproxValue v;
  v.value = -simd::cis_sum(a, ph).im / kPi;
  const auto full = simd::cis_sum(amp_, ph);  // conjugate has the same modulus
  const double lx = std::log(x_);
  v.error_sum = std::hypot(full.re, full.im) / lx;
  v.error_log = std::log(t) / lx;
  return v;
}

SelbergApproxValue selberg_s_approx(double t, double x, const PrimeTable& primes) {
  require(x >= 4.0 && x <= t * t, ErrorKind::domain, "Selberg approximation needs 4 <= x <= t^2");
  return SelbergApprox(x, primes)(t);
}

ExplicitEvalReport smoothed_logderiv_check(cplx s, double x, const ZeroTable& zeros,
                                           const PrimeTable& primes, double zero_height) {
  require(x > 1.0, ErrorKind::invalid_argument, "smoothed formula needs x > 1");
  // sigma >= -1 also keeps s away from the trivial zeros
  require(s.real() >= -1.0, ErrorKind::domain, "smoothed formula checked for sigma >= -1 only");
  require(std::abs(s - 1.0) > 1e-3, ErrorKind::near_singularity, "s too close to the pole");
  const double Tz = resolve_height(zeros, zero_height);
  const double t = s.imag();
  require(Tz > std::abs(t) + 10.0, ErrorKind::coverage, "zero coverage too low for Im s");
  require(x * x <= static_cast<double>(primes.limit()), ErrorKind::coverage,
          "x^2 above the sieve limit");

  const auto ord = zeros.ordinates();
  const std::size_t nz = zeros_upto(zeros, Tz);
  for (std::size_t i = 0; i < nz; ++i) {
    const cplx rho(0.5, ord[i]);
    require(std::abs(s - rho) >= 1e-3 && std::abs(s - std::conj(rho)) >= 1e-3,
            ErrorKind::near_singularity, "s within 1e-3 of a zero");
  }

  const double lx = std::log(x);
  ExplicitEvalReport r;
  r.x = x;
  r.s = s;
  r.zero_height = Tz;
  r.prime_cutoff = x * x;
  r.lhs = log_deriv_zeta(s, 1e-12);

  cplx prime = 0.0;
  const auto pp = primes.prime_powers();
  for (std::size_t i = 0; i < pp.size() && static_cast<double>(pp[i]) <= x * x; ++i) {
    const double ln = std::log(static_cast<double>(pp[i]));
    prime += lambda_x(pp[i], x, primes) * std::exp(-s * ln);
  }
  const cplx one_s = 1.0 - s;
  const cplx pole = (std::exp(2.0 * one_s * lx) - std::exp(one_s * lx)) / (one_s * one_s * lx);

  cplx zsum = 0.0;
  for (std::size_t i = 0; i < nz; ++i) {
    const double m = zeros.multiplicity(i);
    for (const double g : {ord[i], -ord[i]}) {
      const cplx d = cplx(0.5, g) - s;
      zsum += m * (std::exp(d * lx) - std::exp(2.0 * d * lx)) / (d * d);
    }
  }
  zsum /= lx;

  cplx trivial = 0.0;
  for (int n = 1; n <= 500; ++n) {
    const cplx q = 2.0 * n + s;
    const cplx term = (std::exp(-q * lx) - std::exp(-2.0 * q * lx)) / (q * q);
    trivial += term;
    if (std::abs(term) < 1e-18) break;
  }
  trivial /= lx;

  r.rhs = -prime + pole + zsum + trivial;
  r.residual = std::abs(r.lhs - r.rhs);
  const double sig = s.real();
  r.truncation_estimate = (std::pow(x, 0.5 - sig) + std::pow(x, 1.0 - 2.0 * sig)) / lx * 2.0 *
                          density_envelope(Tz) / (Tz - std::abs(t));
  return r;
}

}  // namespace pclab
