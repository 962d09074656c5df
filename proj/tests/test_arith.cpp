#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "pclab/arith.hpp"
#include "pclab/error.hpp"
#include "pclab/zero_store.hpp"

using namespace pclab;
namespace fs = std::filesystem;

namespace {

const PrimeTable& small_table() {
  static const PrimeTable t = sieve_build(200'000, {.segment_size = 4096});
  return t;
}

const PrimeTable& big_table() {
  static const PrimeTable t = sieve_build(2'000'000);
  return t;
}

// Midpoint rule on a uniform grid.
template <class F>
double grid_integral(double a, double b, double step, F f) {
  const auto n = static_cast<std::size_t>(std::llround((b - a) / step));
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f(a + (i + 0.5) * step);
  return s * step;
}

}  // namespace

TEST_CASE("segmented sieve agrees with trial division") {
  const auto& t = small_table();
  std::size_t idx = 0;
  for (std::uint32_t n = 2; n <= 200'000; ++n) {
    if (!oracle::is_prime(n)) continue;
    REQUIRE(idx < t.primes().size());
    CHECK(t.primes()[idx++] == n);
  }
  CHECK(idx == t.primes().size());
}

TEST_CASE("segment size does not change the table") {
  const auto a = sieve_build(300'000, {.segment_size = 1024});
  const auto b = sieve_build(300'000, {.segment_size = 1 << 20});
  CHECK(a == b);
}

TEST_CASE("prime counts") {
  CHECK(big_table().prime_pi(100) == 25);
  CHECK(big_table().prime_pi(1e6) == 78498);
  CHECK(big_table().prime_pi(2) == 1);
  CHECK(big_table().prime_pi(1.999) == 0);
}

TEST_CASE("arithmetic functions match trial division") {
  const auto& t = small_table();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(2, 200'000);
  for (int i = 0; i < 3000; ++i) {
    const auto n = pick(rng);
    CHECK(t.von_mangoldt(n) == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-15));
    CHECK(t.mobius(n) == oracle::mobius(n));
    CHECK(mobius(static_cast<std::int64_t>(n)) == oracle::mobius(n));
    const auto p = t.smallest_factor(n);
    CHECK(n % p == 0);
    CHECK(oracle::is_prime(p));
  }
  CHECK(t.mobius(1) == 1);
  CHECK_THROWS_AS(mobius(std::int64_t{0}), Error);
}

TEST_CASE("psi against direct summation") {
  const auto& t = small_table();
  for (double x : {2.0, 10.0, 10.5, 97.0, 1000.0, 4321.7}) {
    CHECK(t.psi(x) == doctest::Approx(oracle::psi(x)).epsilon(1e-13));
    CHECK(chebyshev_psi(x, t) == doctest::Approx(oracle::psi(x)).epsilon(1e-13));
  }
  // midpoint convention only differs at prime powers
  CHECK(t.psi(8.0, true) == doctest::Approx(oracle::psi(7.0) + 0.5 * std::log(2.0)));
  CHECK(t.psi(10.0, true) == t.psi(10.0));
  CHECK_THROWS_AS(t.psi(1e7), Error);
}

TEST_CASE("psi(x) stays within the conditional error envelope") {
  // |psi(x) - x| < sqrt(x) log^2 x / (8 pi) for x >= 73.2
  CHECK(von_koch_ratio(big_table(), 74.0, 2e6) < 1.0 / (8.0 * M_PI));
}

TEST_CASE("logarithmic integral matches Ei(log x) - Ei(log 2)") {
  CHECK(log_integral(2.0) == 0.0);
  for (double x : {2.5, 10.0, 100.0, 1e3, 1e6, 1e9, 1e12}) {
    const double ref = boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0));
    CHECK(log_integral(x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("twin prime constant") {
  const SingularSeriesTable s;
  // mpmath twinprime, 20 digits
  constexpr double kTwin = 0.66016181584686957393;
  CHECK(std::abs(s.twin_constant() - kTwin) < 1e-11);
  CHECK(std::abs(s.truncated_product() - kTwin) <= s.truncation_bound());
}

TEST_CASE("singular series by two routes") {
  const SingularSeriesTable s;
  for (std::int64_t k = 1; k <= 60; ++k) {
    const double a = s.value(k);
    const double b = s.value_by_local_factors(k);
    if (k % 2) {
      CHECK(a == 0.0);
      CHECK(b == 0.0);
    } else {
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
  CHECK(s.value(2) == doctest::Approx(2.0 * s.twin_constant()).epsilon(1e-14));
  CHECK(s.value(6) == doctest::Approx(2.0 * s.value(2)).epsilon(1e-12));
  CHECK(singular_series(4, s) == s.value(4));
  CHECK_THROWS_AS(singular_series(0, s), Error);
}

TEST_CASE("twin sums against brute force") {
  const auto& t = small_table();
  const SingularSeriesTable s;
  for (int k : {1, 2, 4, 6, 30}) {
    double ref = 0.0;
    for (std::uint64_t n = 1; n <= 20'000; ++n) ref += oracle::von_mangoldt(n) * oracle::von_mangoldt(n + k);
    const auto r = twin_sum(20'000, k, t, s);
    CHECK(r.sum == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(twin_sum(200'000, 2, t, s), Error);
}

TEST_CASE("short-interval moment equals grid quadrature") {
  const auto& t = small_table();
  const double delta = 0.05;
  const auto r = interval_second_moment(3000, delta, t);
  const double ref = grid_integral(1.0, 3000.0, 1e-3, [&](double x) {
    const double d = t.psi((1 + delta) * x) - t.psi(x) - delta * x;
    return d * d;
  });
  CHECK(r.value == doctest::Approx(ref).epsilon(2e-4));
  CHECK(r.model == doctest::Approx(0.5 * delta * 3000.0 * 3000.0 * std::log(1 / delta)));
  CHECK_FALSE(r.degenerate);
  CHECK(interval_second_moment(100, 0.001, t).degenerate);
}

TEST_CASE("fixed-interval moment equals grid quadrature") {
  const auto& t = small_table();
  const double h = 7.5;
  const auto r = fixed_interval_second_moment(3000, h, t);
  const double ref = grid_integral(1.0, 3000.0, 1e-3, [&](double x) {
    const double d = t.psi(x + h) - t.psi(x) - h;
    return d * d;
  });
  CHECK(r.value == doctest::Approx(ref).epsilon(2e-4));
  CHECK(fixed_interval_second_moment(3000, 0.5, t).degenerate);
}

TEST_CASE("maximal prime gaps against a direct scan") {
  const auto& t = small_table();
  const auto rep = prime_gap_scan(t);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ref;
  std::uint32_t best = 0;
  std::uint32_t prev = 2;
  for (std::uint32_t n = 3; n <= 200'000; ++n) {
    if (!oracle::is_prime(n)) continue;
    if (n - prev > best) {
      best = n - prev;
      ref.emplace_back(prev, best);
    }
    prev = n;
  }
  REQUIRE(rep.maximal_gaps.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(rep.maximal_gaps[i].prime == ref[i].first);
    CHECK(rep.maximal_gaps[i].gap == ref[i].second);
  }
  CHECK(rep.largest.gap == best);
}

TEST_CASE("sieve cache round trip and corruption") {
  const auto dir = fs::temp_directory_path() / "pclab_test_arith";
  fs::create_directories(dir);
  const auto path = dir / "sieve.pclb";
  write_sieve_cache(small_table(), path);
  CHECK(load_sieve_cache(path) == small_table());

  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(100);
    f.put('\x5a');
  }
  try {
    load_sieve_cache(path);
    FAIL("corrupted cache accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }

  const auto zpath = dir / "zeros.pclb";
  write_zero_cache(ZeroTable({14.134725141734693, 21.022039638771555}, 0, {}), zpath);
  try {
    load_sieve_cache(zpath);
    FAIL("zero cache accepted as sieve");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::wrong_file);
  }
  fs::remove_all(dir);
}

TEST_CASE("sieve limits are enforced") {
  CHECK_THROWS_AS(sieve_build(1), Error);
  CHECK_THROWS_AS(sieve_build(PrimeTable::kMaxLimit + 1), Error);
  try {
    sieve_build(100'000'000, {.memory_cap_bytes = 1 << 20});
    FAIL("memory cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
  CHECK(sieve_memory_estimate(2'000'000) < sieve_memory_estimate(4'000'000));
}
