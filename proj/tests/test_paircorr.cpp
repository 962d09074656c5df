#include <doctest.h>

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <random>

#include "pclab/error.hpp"
#include "pclab/paircorr.hpp"
#include "pclab/parallel.hpp"
#include "pclab/zeta.hpp"

using namespace pclab;

namespace {

const ZeroTable& zeros_3000() {
  static const ZeroTable z = find_zeros(3000.0);
  return z;
}

// int_0^beta 1 - sinc^2 in closed form through the sine integral
double gue_closed_form(double beta) {
  if (beta == 0.0) return 0.0;
  const double s = std::sin(M_PI * beta);
  return beta - (gsl_sf_Si(2.0 * M_PI * beta) / M_PI - s * s / (M_PI * M_PI * beta));
}

// Direct O(n^2) form factor over all pairs within the cutoff.
double brute_F(const ZeroTable& z, double T, double alpha, double cutoff) {
  std::vector<double> g;
  for (double v : z.ordinates())
    if (v <= T) g.push_back(v);
  const double L = std::log(T);
  double s = 0.0;
  for (double a : g)
    for (double b : g) {
      const double d = a - b;
      if (std::abs(d) <= cutoff) s += std::cos(alpha * L * d) * 4.0 / (4.0 + d * d);
    }
  return s / (T / (2 * M_PI) * L);
}

// Trapezoid Fourier transform of an even function on [-A, A].
double transform(const FourierPair& p, double alpha, double A, double step) {
  double s = 0.5 * p.r(0.0);
  for (double u = step; u <= A; u += step) s += p.r(u) * std::cos(2 * M_PI * alpha * u);
  return 2.0 * s * step;
}

}  // namespace

TEST_CASE("kernel helpers") {
  CHECK(weight_w(0.0) == 1.0);
  CHECK(weight_w(2.0) == doctest::Approx(0.5));
  CHECK(sinc2(0.0) == 1.0);
  CHECK(sinc2(1.0) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(sinc2(1e-6) == doctest::Approx(std::pow(std::sin(M_PI * 1e-6) / (M_PI * 1e-6), 2)).epsilon(1e-15));
  CHECK(sinc2(0.5) == doctest::Approx(4.0 / (M_PI * M_PI)));
}

TEST_CASE("test-function pairs are Fourier pairs") {
  constexpr double A = 400.0;
  for (double lambda : {1.0, 0.5}) {
    const auto p = fejer_pair(lambda);
    for (double a : {0.0, 0.3, 0.8, 1.2, 2.5}) {
      // the 1/u^2 tail beyond A integrates to 1/(pi^2 lambda^2 A) at a = 0
      const double tail = a == 0.0 ? 1.0 / (M_PI * M_PI * lambda * lambda * A) : 0.0;
      CHECK(std::abs(transform(p, a, A, 1e-3) + tail - p.r_hat(a)) < 2e-5);
    }
  }
  const auto s = selberg_minorant_pair();
  for (double a : {0.0, 0.3, 0.8, 1.2}) CHECK(std::abs(transform(s, a, A, 1e-3) - s.r_hat(a)) < 2e-5);
  for (const auto& p : {fejer_pair(1.0), fejer_pair(0.5), s})
    for (double u : {0.5, 3.0, 40.0}) CHECK(std::abs(p.r(u)) <= p.envelope(u) + 1e-15);
  // the series branch near |u| = 1 joins the closed form
  CHECK(s.r(1.0) == 0.0);
  CHECK(std::abs(s.r(1.0 + 0.999e-4) - s.r(1.0 + 1.001e-4)) < 1e-7);
}

TEST_CASE("GUE model against the sine-integral closed form") {
  for (double b : {0.0, 0.1, 0.5, 1.0, 2.3, 3.0, 10.0})
    CHECK(gue_model(b) == doctest::Approx(gue_closed_form(b)).epsilon(1e-10).scale(1.0));
  CHECK(std::abs(sinc2_total_integral() - 1.0) < 1e-6);
}

TEST_CASE("small-gap threshold") {
  // mpmath findroot on the same integral, 30 digits
  CHECK(small_gap_threshold() == doctest::Approx(0.607285917247695930682).epsilon(1e-11));
  CHECK(small_gap_function(0.5) < 0.0);
  CHECK(small_gap_function(0.7) > 0.0);
}

TEST_CASE("form factor against the direct double sum") {
  const double T = 800.0;
  const ZeroTable& z = zeros_3000();
  const std::vector<double> grid = {0.0, 0.25, 0.5, 1.0, 1.7, 3.0};
  const auto F = f_alpha(z, T, grid, 100.0);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(F.F[k] == doctest::Approx(brute_F(z, T, grid[k], 100.0)).epsilon(1e-11));
  // uniform grids take the sweep path
  const auto U = f_alpha(z, T, uniform_grid(0.0, 3.0, 0.25), 100.0);
  for (std::size_t k = 0; k < U.alpha.size(); ++k)
    CHECK(U.F[k] == doctest::Approx(brute_F(z, T, U.alpha[k], 100.0)).epsilon(1e-10));
  CHECK(F.at(-0.5) == doctest::Approx(F.at(0.5)));
}

TEST_CASE("form factor is non-negative without truncation") {
  const double T = 600.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pick(0.0, 3.0);
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(pick(rng));
  std::sort(grid.begin(), grid.end());
  const auto F = f_alpha(zeros_3000(), T, grid, 1000.0);
  for (double v : F.F) CHECK(v >= -1e-12);
}

TEST_CASE("pair tail bound shrinks with the cutoff") {
  const auto ctx = make_pair_context(zeros_3000(), 3000.0);
  CHECK(pair_tail_bound(ctx, 100.0) > pair_tail_bound(ctx, 400.0));
  CHECK(f_alpha(zeros_3000(), 3000.0, std::vector<double>{0.5}, 50.0, 1e-9).tail_warning);
}

TEST_CASE("pair sum routes agree and match brute force") {
  const double T = 3000.0;
  const ZeroTable& z = zeros_3000();
  const auto p = fejer_pair(0.5);
  const auto r = pair_sum(z, T, p, 200.0);
  const double L = std::log(T) / (2 * M_PI);
  double brute = 0.0;
  for (double a : z.ordinates())
    for (double b : z.ordinates()) {
      const double d = a - b;
      if (std::abs(d) <= 200.0) brute += p.r(d * L) * 4.0 / (4.0 + d * d);
    }
  CHECK(r.direct == doctest::Approx(brute).epsilon(1e-11));
  CHECK(r.relative_difference < 0.05);
  CHECK(std::isnan(pair_sum(z, T, zero_pair()).relative_difference) == false);
}

TEST_CASE("spacing histogram counts pairs") {
  const double T = 1000.0;
  const ZeroTable z = zeros_3000().truncated(T);
  const auto h = pcc_histogram(z, T, 2.0, 20);
  const double L = std::log(T) / (2 * M_PI);
  std::vector<double> ref(20, 0.0);
  const auto g = z.ordinates();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double b = (g[j] - g[i]) * L;
      if (b >= 2.0) break;
      ref[static_cast<std::size_t>(b / 0.1)] += 1.0;
    }
  const double norm = T / (2 * M_PI) * std::log(T);
  for (int k = 0; k < 20; ++k) CHECK(h.counts[k] == doctest::Approx(ref[k] / norm).epsilon(1e-12));
  const auto cum = h.cumulative();
  for (std::size_t k = 1; k < cum.size(); ++k) CHECK(cum[k] >= cum[k - 1]);
  CHECK(h.counts[0] < 0.01);
}

TEST_CASE("empirical mu needs enough bins") {
  const auto z = zeros_3000();
  const auto stats = zero_stats(z, 3000.0);
  CHECK(stats.n == doctest::Approx(static_cast<double>(z.size())));
  CHECK(stats.n_simple == stats.n);
  CHECK_THROWS_AS(empirical_mu(pcc_histogram(z, 3000.0, 3.0, 3), stats), Error);
  const auto mu = empirical_mu(pcc_histogram(z, 3000.0, 5.0, 100, SpacingScale::unfolded), stats);
  CHECK(mu.total == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("window bound holds at low height") {
  const auto F = f_alpha(zeros_3000(), 3000.0, uniform_grid(0.0, 3.0, 0.01));
  for (double B : {0.0, 0.5, 1.0, 1.5}) CHECK(lemma1_window(F, B) <= 3.0);
}

TEST_CASE("form factor is independent of the thread count") {
  const auto grid = uniform_grid(0.0, 3.0, 0.05);
  set_worker_count(1);
  const auto a = f_alpha(zeros_3000(), 3000.0, grid).F;
  set_worker_count(3);
  const auto b = f_alpha(zeros_3000(), 3000.0, grid).F;
  set_worker_count(0);
  CHECK(a == b);
}
