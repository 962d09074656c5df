#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace pclab {

struct SieveOptions {
  std::size_t segment_size = std::size_t{1} << 22;
  std::uint64_t memory_cap_bytes = std::uint64_t{4} << 30;
};

// Primes and prime powers up to a limit, with cumulative psi at every prime
// power. Immutable after construction; safe for concurrent reads.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 1'000'000'000;

  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  // Prime powers p^m <= limit in ascending order, with their prime and the
  // value of psi at that point.
  std::span<const std::uint32_t> prime_powers() const { return pp_value_; }
  std::span<const std::uint32_t> prime_power_bases() const { return pp_base_; }

  double von_mangoldt(std::uint64_t n) const;
  std::uint32_t smallest_factor(std::uint64_t n) const;
  int mobius(std::uint64_t n) const;

  // psi(x); with midpoint = true returns psi_0, which differs only when x is
  // exactly an integer prime power.
  double psi(double x, bool midpoint = false) const;
  std::uint64_t prime_pi(double x) const;

  bool operator==(const PrimeTable& other) const = default;

 private:
  friend PrimeTable sieve_build(std::uint64_t, const SieveOptions&);
  friend PrimeTable load_sieve_cache(const std::filesystem::path&);
  void index_prime_powers();

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> pp_value_;
  std::vector<std::uint32_t> pp_base_;
  std::vector<double> pp_psi_;
};

// Bytes the table for a given limit will occupy (used for the memory cap).
std::uint64_t sieve_memory_estimate(std::uint64_t limit);

PrimeTable sieve_build(std::uint64_t limit, const SieveOptions& options = {});

void write_sieve_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_sieve_cache(const std::filesystem::path& path);

double chebyshev_psi(double x, const PrimeTable& table, bool midpoint = false);

// Trial division; independent of any table.
int mobius(std::int64_t n);

double log_integral(double x);

// Singular series of prime pairs at distance k.
class SingularSeriesTable {
 public:
  static constexpr std::uint32_t kProductLimit = 1'000'000;

  SingularSeriesTable();

  double twin_constant() const { return c2_; }
  // Upper bound on the error of the plain truncated product (without the
  // smooth tail correction folded into twin_constant()).
  double truncation_bound() const { return 1.0 / kProductLimit; }
  double truncated_product() const { return c2_truncated_; }

  double value(std::int64_t k) const;
  // Same quantity as the product of local factors over p <= kProductLimit.
  double value_by_local_factors(std::int64_t k) const;

 private:
  std::vector<std::uint32_t> primes_;
  double c2_ = 0.0;
  double c2_truncated_ = 0.0;
  double tail_factor_ = 1.0;
};

double singular_series(std::int64_t k, const SingularSeriesTable& table);

struct TwinSumResult {
  double sum = 0.0;
  double singular_series = 0.0;
  double ratio = 0.0;  // sum / (singular_series * N); NaN when the series is 0
};

TwinSumResult twin_sum(std::uint64_t n_max, std::int64_t k, const PrimeTable& table,
                       const SingularSeriesTable& series);

struct MomentResult {
  double value = 0.0;
  double model = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
};

// int_1^X (psi((1+delta)x) - psi(x) - delta x)^2 dx, evaluated piece by piece
// between jump points. Model 1/2 delta X^2 log(1/delta).
MomentResult interval_second_moment(std::uint64_t X, double delta, const PrimeTable& table);

// int_1^X (psi(x+h) - psi(x) - h)^2 dx. Model h X log(X/h).
MomentResult fixed_interval_second_moment(std::uint64_t X, double h, const PrimeTable& table);

struct GapRecord {
  std::uint32_t prime = 0;
  std::uint32_t gap = 0;
  double ratio_sqrt_log2 = 0.0;  // gap / (sqrt p log^2 p)
  double ratio_sqrt_log = 0.0;   // gap / (sqrt p log p)
  double ratio_log2 = 0.0;       // gap / log^2 p
};

struct GapReport {
  std::vector<GapRecord> maximal_gaps;
  // Maxima of each ratio over consecutive primes p >= min_prime.
  std::uint32_t min_prime = 11;
  double max_ratio_sqrt_log2 = 0.0;
  double max_ratio_sqrt_log = 0.0;
  double max_ratio_log2 = 0.0;
  GapRecord largest;
};

GapReport prime_gap_scan(const PrimeTable& table);

// max over x in [lo, hi] of |psi(x) - x| / (sqrt(x) log^2 x).
double von_koch_ratio(const PrimeTable& table, double lo, double hi);

}  // namespace pclab
