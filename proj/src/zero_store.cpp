#include "pclab/zero_store.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pclab/error.hpp"
#include "pclab/parallel.hpp"
#include "pclab/summation.hpp"

namespace pclab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// smooth_main_term extended continuously to t = 0
double smooth_at(double t) {
  if (t <= 0.0) return 0.875;
  return t / kTwoPi * std::log(t / (kTwoPi * std::numbers::e)) + 0.875;
}

// zeros strictly below t plus those at t (closed): n(t+0)
double count_upto(double t, const ZeroTable& table) {
  const auto ord = table.ordinates();
  const auto k = static_cast<std::size_t>(std::upper_bound(ord.begin(), ord.end(), t) - ord.begin());
  return static_cast<double>(table.weight_before(k));
}

void require_coverage(double T, const ZeroTable& table) {
  require(T <= table.t_max(), ErrorKind::coverage,
          "height " + std::to_string(T) + " above zero table coverage " +
              std::to_string(table.t_max()));
}

constexpr std::size_t kStepsPerChunk = 4096;

// Trapezoid rule for f on [0, T] over the grid k * step, with every point in
// `breaks` inserted as an extra node. f(t, mid) must evaluate the integrand
// at t with all counting functions frozen at their value at `mid`, which is
// strictly inside the current piece. The chunking depends only on T and
// step, so the result does not depend on the thread count.
template <typename F>
double piecewise_trapezoid(double T, double step, std::vector<double> breaks, const F& f) {
  require(step > 0.0, ErrorKind::invalid_argument, "grid step must be positive");
  std::sort(breaks.begin(), breaks.end());
  const auto steps = static_cast<std::size_t>(std::ceil(T / step));
  const std::size_t chunks = (steps + kStepsPerChunk - 1) / kStepsPerChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t k0 = c * kStepsPerChunk;
    const std::size_t k1 = std::min(steps, k0 + kStepsPerChunk);
    const double a = static_cast<double>(k0) * step;
    const double b = k1 == steps ? T : static_cast<double>(k1) * step;
    std::vector<double> nodes;
    nodes.reserve(k1 - k0 + 1);
    for (std::size_t k = k0; k < k1; ++k) nodes.push_back(static_cast<double>(k) * step);
    nodes.push_back(b);
    auto lo = std::upper_bound(breaks.begin(), breaks.end(), a);
    auto hi = std::lower_bound(breaks.begin(), breaks.end(), b);
    const std::size_t grid_n = nodes.size();
    nodes.insert(nodes.end(), lo, hi);
    std::inplace_merge(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(grid_n), nodes.end());
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double u = nodes[i];
      const double v = nodes[i + 1];
      if (v <= u) continue;
      const double mid = 0.5 * (u + v);
      acc += 0.5 * (v - u) * (f(u, mid) + f(v, mid));
    }
    partial[c] = acc.value();
  });
  CompensatedSum<double> total;
  for (double p : partial) total += p;
  return total.value();
}

std::vector<double> ordinates_below(const ZeroTable& table, double T, double shift = 0.0) {
  std::vector<double> out;
  for (double g : table.ordinates()) {
    const double b = g - shift;
    if (b >= T) break;
    if (b > 0.0) out.push_back(b);
  }
  return out;
}

}  // namespace

double count_N(double T, const ZeroTable& table) {
  require_coverage(T, table);
  const auto ord = table.ordinates();
  const auto lo = static_cast<std::size_t>(std::lower_bound(ord.begin(), ord.end(), T) - ord.begin());
  const auto hi = static_cast<std::size_t>(std::upper_bound(ord.begin(), ord.end(), T) - ord.begin());
  return 0.5 * static_cast<double>(table.weight_before(lo) + table.weight_before(hi));
}

double smooth_main_term(double T) {
  require(T > 0.0, ErrorKind::invalid_argument, "smooth_main_term needs T > 0");
  return smooth_at(T);
}

double s_of_t(double T, const ZeroTable& table) {
  require(T >= 20.0, ErrorKind::invalid_argument, "s_of_t needs T >= 20");
  return count_N(T, table) - smooth_main_term(T);
}

SCurve s_curve(const ZeroTable& table, double t0, double t1, double step) {
  require(t0 > 0.0 && t1 >= t0 && step > 0.0, ErrorKind::invalid_argument,
          "s_curve needs 0 < t0 <= t1 and step > 0");
  require_coverage(t1, table);
  SCurve c;
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9)) + 1;
  c.t.resize(n);
  c.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * step;
    c.t[i] = t;
    c.s[i] = count_N(t, table) - smooth_at(t);
  }
  return c;
}

double s_mean(double T, const ZeroTable& table, double grid_step) {
  require(T > 0.0, ErrorKind::invalid_argument, "s_mean needs T > 0");
  require_coverage(T, table);
  const double integral = piecewise_trapezoid(
      T, grid_step, ordinates_below(table, T),
      [&](double t, double mid) { return count_upto(mid, table) - smooth_at(t); });
  return integral / T;
}

FujiiResult fujii_variance(double T, double h, const ZeroTable& table, double grid_step) {
  require(T > 0.0 && h >= 0.0, ErrorKind::invalid_argument, "fujii_variance needs T > 0, h >= 0");
  require_coverage(T + h, table);
  FujiiResult r;
  if (h > 0.0) {
    auto breaks = ordinates_below(table, T);
    const auto shifted = ordinates_below(table, T, h);
    breaks.insert(breaks.end(), shifted.begin(), shifted.end());
    r.value = piecewise_trapezoid(T, grid_step, std::move(breaks), [&](double t, double mid) {
      const double d = count_upto(mid + h, table) - count_upto(mid, table) -
                       (smooth_at(t + h) - smooth_at(t));
      return d * d;
    });
  }
  const double hl = h * std::log(T);
  r.upper_shape = T * std::log(2.0 + hl);
  if (hl > std::numbers::e) {
    r.model = T / (std::numbers::pi * std::numbers::pi) * std::log(hl);
    r.ratio = r.value / r.model;
  } else {
    r.model = r.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double s_moment_coefficient(int k) {
  require(k >= 1, ErrorKind::invalid_argument, "moment order must be >= 1");
  // (2k)! / k! / (2pi)^(2k)
  double v = 1.0;
  for (int j = k + 1; j <= 2 * k; ++j) v *= j;
  return v / std::pow(kTwoPi, 2 * k);
}

MomentReport s_moment(double T, int k, const ZeroTable& table, double grid_step) {
  require(k >= 1 && k <= 3, ErrorKind::invalid_argument, "s_moment needs k in {1, 2, 3}");
  require(T > std::numbers::e, ErrorKind::invalid_argument, "s_moment needs T > e");
  require_coverage(T, table);
  MomentReport r;
  r.value = piecewise_trapezoid(T, grid_step, ordinates_below(table, T),
                                [&](double t, double mid) {
                                  const double s = count_upto(mid, table) - smooth_at(t);
                                  return std::pow(s, 2 * k);
                                });
  r.model = s_moment_coefficient(k) * T * std::pow(std::log(std::log(T)), k);
  r.ratio = r.value / r.model;
  return r;
}

SignChangeReport sign_changes(double T, const ZeroTable& table) {
  require(T > 0.0, ErrorKind::invalid_argument, "sign_changes needs T > 0");
  require_coverage(T, table);
  std::uint64_t changes = 0;
  int last = 0;
  auto feed = [&](double v) {
    const int sg = (v > 0.0) - (v < 0.0);
    if (sg == 0) return;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  };
  const auto ord = table.ordinates();
  double prev = 0.0;
  double count = 0.0;
  auto piece = [&](double a, double b) {
    feed(count - smooth_at(a));
    if (a < kTwoPi && kTwoPi < b) feed(count - smooth_at(kTwoPi));
    feed(count - smooth_at(b));
  };
  for (std::size_t i = 0; i < ord.size() && ord[i] <= T; ++i) {
    piece(prev, ord[i]);
    count += table.multiplicity(i);
    prev = ord[i];
  }
  if (prev < T) piece(prev, T);
  else feed(count - smooth_at(T));

  SignChangeReport r;
  r.count = changes;
  if (T > std::numbers::e * std::numbers::e) {
    r.model = T * std::log(T) / std::sqrt(std::numbers::pi * std::log(std::log(T)));
    r.ratio = static_cast<double>(changes) / r.model;
  }
  return r;
}

DensityReport unit_interval_density(const ZeroTable& table, double t_min) {
  DensityReport r;
  const auto ord = table.ordinates();
  std::size_t i = 0;
  for (std::size_t j = 0; j < ord.size(); ++j) {
    while (ord[j] - ord[i] > 1.0) ++i;
    if (ord[j] < t_min) continue;
    const std::uint64_t c = table.weight_before(j + 1) - table.weight_before(i);
    if (c > r.max_count) {
      r.max_count = c;
      r.height = ord[j];
    }
    const double h = std::max(ord[j], 20.0);
    r.max_ratio = std::max(r.max_ratio, static_cast<double>(c) / std::log(h));
  }
  return r;
}

}  // namespace pclab
