#include "pclab/arith.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>

#include "binary_io.hpp"
#include "pclab/error.hpp"
#include "pclab/quadrature.hpp"
#include "pclab/summation.hpp"

namespace pclab {
namespace {

constexpr char kSieveMagic[8] = {'P', 'C', 'L', 'B', 'S', 'V', '0', '1'};

std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<char> composite(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

std::uint32_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint64_t sieve_memory_estimate(std::uint64_t limit) {
  // primes (4 bytes) + prime powers (4 + 4 + 8 bytes), with pi(x) bounded by
  // 1.26 x / log x, plus the base-prime sieve and one segment.
  const double lx = std::log(std::max<double>(static_cast<double>(limit), 3.0));
  const double count = 1.26 * static_cast<double>(limit) / lx + 64.0;
  return static_cast<std::uint64_t>(count * 20.0) + isqrt(limit) + (1u << 22);
}

PrimeTable sieve_build(std::uint64_t limit, const SieveOptions& options) {
  require(limit >= 2, ErrorKind::invalid_argument, "sieve limit must be >= 2");
  require(limit <= PrimeTable::kMaxLimit, ErrorKind::invalid_argument,
          "sieve limit must be <= 1e9");
  require(options.segment_size >= 1024, ErrorKind::invalid_argument,
          "sieve segment size must be >= 1024");
  const std::uint64_t need = sieve_memory_estimate(limit);
  require(need <= options.memory_cap_bytes, ErrorKind::resource,
          "sieve to " + std::to_string(limit) + " needs about " + std::to_string(need) +
              " bytes, above the configured cap");

  PrimeTable t;
  t.limit_ = limit;
  const auto base = simple_sieve(isqrt(limit));
  const double lx = std::log(static_cast<double>(limit) + 3.0);
  t.primes_.reserve(static_cast<std::size_t>(1.26 * static_cast<double>(limit) / lx) + 64);

  std::vector<char> seg(options.segment_size);
  for (std::uint64_t lo = 2; lo <= limit; lo += options.segment_size) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + options.segment_size - 1, limit);
    const std::size_t len = hi - lo + 1;
    std::fill_n(seg.begin(), len, 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 1;
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (!seg[i]) t.primes_.push_back(static_cast<std::uint32_t>(lo + i));
    }
  }
  t.index_prime_powers();
  return t;
}

void PrimeTable::index_prime_powers() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> higher;
  for (std::uint32_t p : primes_) {
    if (std::uint64_t{p} * p > limit_) break;
    for (std::uint64_t q = std::uint64_t{p} * p; q <= limit_; q *= p) {
      higher.emplace_back(static_cast<std::uint32_t>(q), p);
    }
  }
  std::sort(higher.begin(), higher.end());

  const std::size_t total = primes_.size() + higher.size();
  pp_value_.clear();
  pp_base_.clear();
  pp_psi_.clear();
  pp_value_.reserve(total);
  pp_base_.reserve(total);
  pp_psi_.reserve(total);

  CompensatedSum<double> acc;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < primes_.size() || j < higher.size()) {
    std::uint32_t v;
    std::uint32_t b;
    if (j >= higher.size() || (i < primes_.size() && primes_[i] < higher[j].first)) {
      v = b = primes_[i++];
    } else {
      v = higher[j].first;
      b = higher[j].second;
      ++j;
    }
    acc += std::log(static_cast<double>(b));
    pp_value_.push_back(v);
    pp_base_.push_back(b);
    pp_psi_.push_back(acc.value());
  }
}

double PrimeTable::von_mangoldt(std::uint64_t n) const {
  require(n <= limit_, ErrorKind::out_of_range, "argument above sieve limit");
  const auto it = std::lower_bound(pp_value_.begin(), pp_value_.end(), n);
  if (it == pp_value_.end() || *it != n) return 0.0;
  return std::log(static_cast<double>(pp_base_[it - pp_value_.begin()]));
}

std::uint32_t PrimeTable::smallest_factor(std::uint64_t n) const {
  require(n >= 2 && n <= limit_, ErrorKind::out_of_range, "smallest_factor: n outside [2, limit]");
  for (std::uint32_t p : primes_) {
    if (std::uint64_t{p} * p > n) break;
    if (n % p == 0) return p;
  }
  return static_cast<std::uint32_t>(n);
}

int PrimeTable::mobius(std::uint64_t n) const {
  require(n >= 1, ErrorKind::invalid_argument, "mobius(0) is undefined");
  int sign = 1;
  while (n > 1) {
    const std::uint32_t p = smallest_factor(n);
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

double PrimeTable::psi(double x, bool midpoint) const {
  require(x <= static_cast<double>(limit_), ErrorKind::out_of_range,
          "psi argument above sieve limit");
  if (x < 2.0) return 0.0;
  const auto fx = static_cast<std::uint32_t>(std::floor(x));
  const auto it = std::upper_bound(pp_value_.begin(), pp_value_.end(), fx);
  if (it == pp_value_.begin()) return 0.0;
  const std::size_t idx = static_cast<std::size_t>(it - pp_value_.begin()) - 1;
  double v = pp_psi_[idx];
  if (midpoint && x == static_cast<double>(fx) && pp_value_[idx] == fx) {
    v -= 0.5 * std::log(static_cast<double>(pp_base_[idx]));
  }
  return v;
}

std::uint64_t PrimeTable::prime_pi(double x) const {
  require(x <= static_cast<double>(limit_), ErrorKind::out_of_range,
          "prime_pi argument above sieve limit");
  if (x < 2.0) return 0;
  const auto fx = static_cast<std::uint32_t>(std::floor(x));
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), fx) -
                                    primes_.begin());
}

void write_sieve_cache(const PrimeTable& table, const std::filesystem::path& path) {
  std::vector<std::uint64_t> header = {table.limit(), table.primes().size()};
  detail::write_blob(path, kSieveMagic, header,
                     std::as_bytes(table.primes()));
}

PrimeTable load_sieve_cache(const std::filesystem::path& path) {
  std::vector<std::uint64_t> header;
  std::vector<std::byte> payload;
  detail::read_blob(path, kSieveMagic, 2, header, payload);
  PrimeTable t;
  t.limit_ = header[0];
  require(header[1] * sizeof(std::uint32_t) == payload.size(), ErrorKind::validation,
          "sieve cache payload size mismatch");
  t.primes_.resize(header[1]);
  std::memcpy(t.primes_.data(), payload.data(), payload.size());
  require(std::is_sorted(t.primes_.begin(), t.primes_.end()), ErrorKind::validation,
          "sieve cache primes not sorted");
  t.index_prime_powers();
  return t;
}

double chebyshev_psi(double x, const PrimeTable& table, bool midpoint) {
  require(x > 0.0, ErrorKind::invalid_argument, "psi needs x > 0");
  return table.psi(x, midpoint);
}

int mobius(std::int64_t n) {
  require(n >= 1, ErrorKind::invalid_argument, "mobius needs n >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

double log_integral(double x) {
  require(x >= 2.0, ErrorKind::invalid_argument, "li(x) needs x >= 2");
  if (x == 2.0) return 0.0;
  // substitute u = e^v: integrand e^v / v, panels of unit length in v
  const double v0 = std::numbers::ln2;
  const double v1 = std::log(x);
  std::vector<double> nodes;
  for (double v = v0; v < v1; v += 1.0) nodes.push_back(v);
  nodes.push_back(v1);
  const auto r = quad::integrate_panels([](double v) { return std::exp(v) / v; },
                                        nodes.data(), nodes.size(), 1e-13);
  return r.value;
}

SingularSeriesTable::SingularSeriesTable() : primes_(simple_sieve(kProductLimit)) {
  CompensatedSum<double> log_prod;
  for (std::uint32_t p : primes_) {
    if (p == 2) continue;
    const double d = static_cast<double>(p) - 1.0;
    log_prod += std::log1p(-1.0 / (d * d));
  }
  c2_truncated_ = std::exp(log_prod.value());
  // Primes above the cut weighted by the density 1/log u.
  const double P = kProductLimit;
  const auto tail = quad::integrate(
      [P](double v) {
        if (v <= 0.0) return 0.0;
        return P / ((P - v) * (P - v) * std::log(P / v));
      },
      0.0, 1.0, 1e-12);
  tail_factor_ = std::exp(-tail.value);
  c2_ = c2_truncated_ * tail_factor_;
}

double SingularSeriesTable::value(std::int64_t k) const {
  require(k != 0, ErrorKind::invalid_argument, "singular series needs k != 0");
  k = k < 0 ? -k : k;
  if (k % 2 != 0) return 0.0;
  double v = 2.0 * c2_;
  std::int64_t m = k;
  while (m % 2 == 0) m /= 2;
  for (std::int64_t p = 3; p * p <= m; p += 2) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    v *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  if (m > 1) v *= static_cast<double>(m - 1) / static_cast<double>(m - 2);
  return v;
}

double SingularSeriesTable::value_by_local_factors(std::int64_t k) const {
  require(k != 0, ErrorKind::invalid_argument, "singular series needs k != 0");
  k = k < 0 ? -k : k;
  CompensatedSum<double> log_prod;
  for (std::uint32_t p : primes_) {
    const double pd = p;
    double factor;
    if (k % p == 0) {
      factor = pd / (pd - 1.0);
    } else {
      factor = 1.0 - 1.0 / ((pd - 1.0) * (pd - 1.0));
    }
    if (factor == 0.0) return 0.0;  // p = 2 with k odd
    log_prod += std::log(factor);
  }
  return std::exp(log_prod.value()) * tail_factor_;
}

double singular_series(std::int64_t k, const SingularSeriesTable& table) {
  require(k >= 1, ErrorKind::invalid_argument, "singular series needs k >= 1");
  return table.value(k);
}

TwinSumResult twin_sum(std::uint64_t n_max, std::int64_t k, const PrimeTable& table,
                       const SingularSeriesTable& series) {
  require(k >= 1, ErrorKind::invalid_argument, "twin_sum needs k >= 1");
  require(n_max + static_cast<std::uint64_t>(k) <= table.limit(), ErrorKind::out_of_range,
          "twin_sum: N + k exceeds sieve limit");
  const auto pp = table.prime_powers();
  const auto base = table.prime_power_bases();
  CompensatedSum<double> acc;
  std::size_t j = 0;
  for (std::size_t i = 0; i < pp.size() && pp[i] <= n_max; ++i) {
    const std::uint64_t target = std::uint64_t{pp[i]} + static_cast<std::uint64_t>(k);
    while (j < pp.size() && pp[j] < target) ++j;
    if (j < pp.size() && pp[j] == target) {
      acc += std::log(static_cast<double>(base[i])) * std::log(static_cast<double>(base[j]));
    }
  }
  TwinSumResult r;
  r.sum = acc.value();
  r.singular_series = series.value(k);
  r.ratio = r.singular_series > 0.0 ? r.sum / (r.singular_series * static_cast<double>(n_max))
                                    : std::numeric_limits<double>::quiet_NaN();
  return r;
}

namespace {

// Integral of (c - s x)^2 over [a, b], long double throughout.
long double piece_integral(long double c, long double s, long double a, long double b) {
  return (b - a) * (c * c - c * s * (a + b) + s * s * (a * a + a * b + b * b) / 3.0L);
}

}  // namespace

MomentResult interval_second_moment(std::uint64_t X, double delta, const PrimeTable& table) {
  require(delta > 0.0 && delta < 1.0, ErrorKind::invalid_argument,
          "interval moment needs 0 < delta < 1");
  require(X >= 2, ErrorKind::invalid_argument, "interval moment needs X >= 2");
  const long double d = delta;
  const long double top = (1.0L + d) * static_cast<long double>(X);
  require(top <= static_cast<long double>(table.limit()), ErrorKind::out_of_range,
          "interval moment: (1+delta) X exceeds sieve limit");

  const auto pp = table.prime_powers();
  const auto base = table.prime_power_bases();
  // psi(x) jumps at m; psi((1+d)x) jumps at m/(1+d)
  std::size_t i = 0;  // next jump of psi(x)
  std::size_t j = 0;  // next jump of psi((1+d)x)
  long double c = 0.0L;
  long double x = 1.0L;
  while (j < pp.size() && pp[j] / (1.0L + d) <= x) {
    c += std::log(static_cast<long double>(base[j]));
    ++j;
  }
  CompensatedSum<long double> acc;
  const long double end = static_cast<long double>(X);
  while (x < end) {
    const long double xi = i < pp.size() ? static_cast<long double>(pp[i]) : end;
    const long double xj = j < pp.size() ? pp[j] / (1.0L + d) : end;
    const long double nx = std::min({xi, xj, end});
    if (nx > x) acc += piece_integral(c, d, x, nx);
    x = nx;
    while (i < pp.size() && static_cast<long double>(pp[i]) <= x) {
      c -= std::log(static_cast<long double>(base[i]));
      ++i;
    }
    while (j < pp.size() && pp[j] / (1.0L + d) <= x) {
      c += std::log(static_cast<long double>(base[j]));
      ++j;
    }
  }
  MomentResult r;
  r.value = static_cast<double>(acc.value());
  const double Xd = static_cast<double>(X);
  r.model = 0.5 * delta * Xd * Xd * std::log(1.0 / delta);
  r.ratio = r.value / r.model;
  r.degenerate = delta * Xd < 1.0;
  return r;
}

MomentResult fixed_interval_second_moment(std::uint64_t X, double h, const PrimeTable& table) {
  require(h > 0.0, ErrorKind::invalid_argument, "fixed-interval moment needs h > 0");
  require(X >= 2, ErrorKind::invalid_argument, "fixed-interval moment needs X >= 2");
  const long double hl = h;
  require(static_cast<long double>(X) + hl <= static_cast<long double>(table.limit()),
          ErrorKind::out_of_range, "fixed-interval moment: X + h exceeds sieve limit");

  const auto pp = table.prime_powers();
  const auto base = table.prime_power_bases();
  std::size_t i = 0;
  std::size_t j = 0;
  long double c = 0.0L;
  long double x = 1.0L;
  while (j < pp.size() && pp[j] - hl <= x) {
    c += std::log(static_cast<long double>(base[j]));
    ++j;
  }
  CompensatedSum<long double> acc;
  const long double end = static_cast<long double>(X);
  while (x < end) {
    const long double xi = i < pp.size() ? static_cast<long double>(pp[i]) : end;
    const long double xj = j < pp.size() ? pp[j] - hl : end;
    const long double nx = std::min({xi, xj, end});
    if (nx > x) acc += (nx - x) * (c - hl) * (c - hl);
    x = nx;
    while (i < pp.size() && static_cast<long double>(pp[i]) <= x) {
      c -= std::log(static_cast<long double>(base[i]));
      ++i;
    }
    while (j < pp.size() && pp[j] - hl <= x) {
      c += std::log(static_cast<long double>(base[j]));
      ++j;
    }
  }
  MomentResult r;
  r.value = static_cast<double>(acc.value());
  const double Xd = static_cast<double>(X);
  r.model = h * Xd * std::log(Xd / h);
  r.ratio = r.value / r.model;
  r.degenerate = h < 1.0;
  return r;
}

GapReport prime_gap_scan(const PrimeTable& table) {
  const auto primes = table.primes();
  require(table.limit() >= 100 && primes.size() >= 2, ErrorKind::empty_input,
          "gap scan needs a sieve to at least 100");
  GapReport rep;
  std::uint32_t record = 0;
  for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
    const std::uint32_t p = primes[i];
    const std::uint32_t g = primes[i + 1] - p;
    const double lp = std::log(static_cast<double>(p));
    const double sp = std::sqrt(static_cast<double>(p));
    GapRecord rec{p, g, g / (sp * lp * lp), g / (sp * lp), g / (lp * lp)};
    if (g > record) {
      record = g;
      rep.maximal_gaps.push_back(rec);
      rep.largest = rec;
    }
    if (p >= rep.min_prime) {
      rep.max_ratio_sqrt_log2 = std::max(rep.max_ratio_sqrt_log2, rec.ratio_sqrt_log2);
      rep.max_ratio_sqrt_log = std::max(rep.max_ratio_sqrt_log, rec.ratio_sqrt_log);
      rep.max_ratio_log2 = std::max(rep.max_ratio_log2, rec.ratio_log2);
    }
  }
  return rep;
}

double von_koch_ratio(const PrimeTable& table, double lo, double hi) {
  require(lo >= 2.0 && hi > lo, ErrorKind::invalid_argument, "von_koch_ratio needs 2 <= lo < hi");
  require(hi <= static_cast<double>(table.limit()), ErrorKind::out_of_range,
          "von_koch_ratio: hi above sieve limit");
  auto norm = [](double x) {
    const double l = std::log(x);
    return std::sqrt(x) * l * l;
  };
  // psi is constant on [m, m'), so the extremes sit at the piece ends
  double best = std::abs(table.psi(lo) - lo) / norm(lo);
  const auto pp = table.prime_powers();
  auto it = std::upper_bound(pp.begin(), pp.end(), static_cast<std::uint32_t>(lo));
  double level = table.psi(lo);
  for (; it != pp.end() && *it <= hi; ++it) {
    const double m = *it;
    best = std::max(best, std::abs(level - m) / norm(m));  // left limit
    level = table.psi(m);
    best = std::max(best, std::abs(level - m) / norm(m));
  }
  best = std::max(best, std::abs(level - hi) / norm(hi));
  return best;
}

}  // namespace pclab
