#include "pclab/paircorr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pclab/error.hpp"
#include "pclab/parallel.hpp"
#include "pclab/quadrature.hpp"
#include "pclab/simd.hpp"
#include "pclab/summation.hpp"

namespace pclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::size_t kOuterChunk = 256;

// Visits every pair j > i with gamma_j - gamma_i <= cutoff, chunked by i.
// visit(chunk, i, j, d) is called in index order within a chunk.
template <typename Visit>
void for_each_pair_chunk(const PairContext& ctx, double cutoff, std::size_t chunk,
                         const Visit& visit) {
  const std::size_t n = ctx.gamma.size();
  const std::size_t i0 = chunk * kOuterChunk;
  const std::size_t i1 = std::min(n, i0 + kOuterChunk);
  for (std::size_t i = i0; i < i1; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = ctx.gamma[j] - ctx.gamma[i];
      if (d > cutoff) break;
      visit(i, j, d);
    }
  }
}

std::size_t chunk_count(const PairContext& ctx) {
  return (ctx.gamma.size() + kOuterChunk - 1) / kOuterChunk;
}

double diagonal(const PairContext& ctx) {
  CompensatedSum<double> s;
  for (double m : ctx.mult) s += m * m;
  return s.value();
}

bool is_uniform(std::span<const double> a, double& step) {
  if (a.size() < 2) {
    step = 1.0;
    return true;
  }
  step = (a.back() - a.front()) / static_cast<double>(a.size() - 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double expect = a.front() + static_cast<double>(k) * step;
    if (std::abs(a[k] - expect) > 1e-9 * std::max(1.0, std::abs(expect))) return false;
  }
  return step > 0.0;
}

}  // namespace

double weight_w(double u) { return 4.0 / (4.0 + u * u); }

double sinc2(double u) {
  const double x = kPi * u;
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0;
  const double s = std::sin(x) / x;
  return s * s;
}

FourierPair fejer_pair(double lambda) {
  require(lambda > 0.0, ErrorKind::invalid_argument, "Fejer pair needs lambda > 0");
  FourierPair p;
  p.name = "fejer";
  p.support_radius = lambda;
  p.r = [lambda](double u) { return sinc2(lambda * u); };
  p.r_hat = [lambda](double a) { return std::max(1.0 - std::abs(a) / lambda, 0.0) / lambda; };
  p.envelope = [lambda](double u) {
    const double x = kPi * lambda * u;
    return x <= 1.0 ? 1.0 : 1.0 / (x * x);
  };
  return p;
}

FourierPair selberg_minorant_pair() {
  FourierPair p;
  p.name = "selberg-minorant";
  p.support_radius = 1.0;
  p.r = [](double u) {
    const double au = std::abs(u);
    const double eps = au - 1.0;
    if (std::abs(eps) < 1e-4) {
      // sin^2 has a double zero at |u| = 1, cancelling the pole
      const double pe = kPi * eps;
      return -eps * (1.0 - pe * pe / 3.0) / ((1.0 + eps) * (1.0 + eps) * (2.0 + eps));
    }
    return sinc2(u) / (1.0 - u * u);
  };
  p.r_hat = [](double a) {
    const double aa = std::abs(a);
    return std::max(1.0 - aa + std::sin(kTwoPi * aa) / kTwoPi, 0.0);
  };
  p.envelope = [](double u) {
    if (u <= 1.5) return 1.0;
    return 1.0 / (kPi * kPi * u * u * (u * u - 1.0));
  };
  return p;
}

FourierPair zero_pair() {
  FourierPair p;
  p.name = "zero";
  p.support_radius = 0.0;
  p.r = [](double) { return 0.0; };
  p.r_hat = [](double) { return 0.0; };
  p.envelope = [](double) { return 0.0; };
  return p;
}

PairContext make_pair_context(const ZeroTable& table, double T) {
  require(T <= table.t_max(), ErrorKind::coverage,
          "height " + std::to_string(T) + " above zero table coverage " +
              std::to_string(table.t_max()));
  require(T > kTwoPi, ErrorKind::invalid_argument, "pair statistics need T > 2 pi");
  PairContext ctx;
  const auto ord = table.ordinates();
  for (std::size_t i = 0; i < ord.size() && ord[i] <= T; ++i) {
    ctx.gamma.push_back(ord[i]);
    ctx.mult.push_back(static_cast<double>(table.multiplicity(i)));
  }
  ctx.T = T;
  ctx.log_T = std::log(T);
  ctx.normalization = T / kTwoPi * ctx.log_T;
  ctx.density = static_cast<double>(unit_interval_density(table.truncated(T), 0.0).max_count);
  return ctx;
}

double pair_tail_bound(const PairContext& ctx, double cutoff, double sup_r) {
  // each zero sees at most D zeros per unit length; sum over |d| > c of
  // w(d) <= 2 D sum_k 4/(c+k)^2 <= 8 D / (c - 1)
  double n = 0.0;
  for (double m : ctx.mult) n += m;
  const double maxm = ctx.mult.empty() ? 1.0 : *std::max_element(ctx.mult.begin(), ctx.mult.end());
  return n * maxm * 8.0 * ctx.density / (cutoff - 1.0) * sup_r / ctx.normalization;
}

double FAlphaSeries::at(double a) const {
  a = std::abs(a);
  require(!alpha.empty() && a >= alpha.front() && a <= alpha.back(), ErrorKind::out_of_range,
          "alpha outside the F grid");
  const auto it = std::lower_bound(alpha.begin(), alpha.end(), a);
  const auto k = static_cast<std::size_t>(it - alpha.begin());
  if (alpha[k] == a || k == 0) return F[k];
  const double t = (a - alpha[k - 1]) / (alpha[k] - alpha[k - 1]);
  return F[k - 1] + t * (F[k] - F[k - 1]);
}

std::vector<double> uniform_grid(double a0, double a1, double step) {
  require(step > 0.0 && a1 >= a0, ErrorKind::invalid_argument, "bad grid");
  const auto n = static_cast<std::size_t>(std::llround((a1 - a0) / step));
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = a0 + static_cast<double>(k) * step;
  g.back() = a1;
  return g;
}

FAlphaSeries f_alpha(const ZeroTable& table, double T, std::span<const double> alphas,
                     double cutoff, double tail_tolerance) {
  require(cutoff >= 50.0, ErrorKind::invalid_argument, "pair cutoff must be >= 50");
  require(!alphas.empty(), ErrorKind::invalid_argument, "empty alpha grid");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    require(alphas[k] >= 0.0 && alphas[k] <= 3.0, ErrorKind::invalid_argument,
            "alpha grid must lie in [0, 3]");
    require(k == 0 || alphas[k] > alphas[k - 1], ErrorKind::invalid_argument,
            "alpha grid must be increasing");
  }
  const PairContext ctx = make_pair_context(table, T);
  const std::size_t na = alphas.size();
  double da = 0.0;
  const bool uniform = is_uniform(alphas, da);

  const std::size_t chunks = chunk_count(ctx);
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> weight;
    std::vector<double> phase;
    for_each_pair_chunk(ctx, cutoff, c, [&](std::size_t i, std::size_t j, double d) {
      weight.push_back(2.0 * ctx.mult[i] * ctx.mult[j] * weight_w(d));
      phase.push_back(ctx.log_T * d);
    });
    std::vector<double> acc(na, 0.0);
    if (uniform) {
      simd::cos_sweep_accumulate(weight, phase, alphas.front(), da, acc);
    } else {
      std::vector<double> ph(phase.size());
      for (std::size_t k = 0; k < na; ++k) {
        for (std::size_t p = 0; p < phase.size(); ++p) ph[p] = phase[p] * alphas[k];
        acc[k] = simd::cis_sum(weight, ph).re;
      }
    }
    partial[c] = std::move(acc);
  });

  FAlphaSeries out;
  out.T = T;
  out.normalization = ctx.normalization;
  out.cutoff = cutoff;
  out.zero_count = ctx.gamma.size();
  out.alpha.assign(alphas.begin(), alphas.end());
  out.F.resize(na);
  const double diag = diagonal(ctx);
  for (std::size_t k = 0; k < na; ++k) {
    CompensatedSum<double> s(diag);
    for (const auto& p : partial) s += p[k];
    out.F[k] = s.value() / ctx.normalization;
  }
  out.tail_bound = pair_tail_bound(ctx, cutoff);
  out.tail_warning = out.tail_bound > tail_tolerance;
  return out;
}

PairSumResult pair_sum(const ZeroTable& table, double T, const FourierPair& pair, double cutoff,
                       double alpha_step) {
  require(cutoff >= 50.0, ErrorKind::invalid_argument, "pair cutoff must be >= 50");
  const PairContext ctx = make_pair_context(table, T);
  const double scale = ctx.log_T / kTwoPi;

  const std::size_t chunks = chunk_count(ctx);
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    CompensatedSum<double> s;
    for_each_pair_chunk(ctx, cutoff, c, [&](std::size_t i, std::size_t j, double d) {
      s += 2.0 * ctx.mult[i] * ctx.mult[j] * pair.r(d * scale) * weight_w(d);
    });
    partial[c] = s.value();
  });
  CompensatedSum<double> total(diagonal(ctx) * pair.r(0.0));
  for (double p : partial) total += p;

  PairSumResult r;
  r.direct = total.value();
  r.normalized_direct = r.direct / ctx.normalization;
  r.tail_bound = pair_tail_bound(ctx, cutoff, pair.envelope(cutoff * scale));

  if (std::isfinite(pair.support_radius)) {
    if (pair.support_radius > 0.0) {
      require(pair.support_radius <= 3.0, ErrorKind::invalid_argument,
              "transform route needs support radius <= 3");
      const auto grid = uniform_grid(0.0, pair.support_radius, alpha_step);
      const FAlphaSeries F = f_alpha(table, T, grid, cutoff);
      CompensatedSum<double> integral;
      for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double h = grid[k + 1] - grid[k];
        integral += 0.5 * h * (pair.r_hat(grid[k]) * F.F[k] + pair.r_hat(grid[k + 1]) * F.F[k + 1]);
      }
      r.normalized_transform = 2.0 * integral.value();  // F and r_hat are even
    } else {
      r.normalized_transform = 0.0;
    }
    r.transform = r.normalized_transform * ctx.normalization;
    r.relative_difference = r.direct != 0.0
                                ? std::abs(r.direct - r.transform) / std::abs(r.direct)
                                : std::abs(r.transform);
  }
  return r;
}

double small_gap_function(double lambda, double quad_tol) {
  const FourierPair h = selberg_minorant_pair();
  const auto integral = quad::integrate(
      [&](double a) { return a * h.r_hat(lambda * a); }, 0.0, 1.0, quad_tol);
  return lambda - 1.0 + 2.0 * lambda * integral.value;
}

double small_gap_threshold(double quad_tol) {
  require(quad_tol <= 1e-8 && quad_tol > 0.0, ErrorKind::invalid_argument,
          "small-gap quadrature tolerance must be in (0, 1e-8]");
  double lo = 0.5;
  double hi = 0.7;
  double glo = small_gap_function(lo, quad_tol);
  const double ghi = small_gap_function(hi, quad_tol);
  require(glo < 0.0 && ghi > 0.0, ErrorKind::internal, "small-gap bracket has no sign change");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double g = small_gap_function(mid, quad_tol);
    if ((g < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> PairHistogram::cumulative() const {
  std::vector<double> c(counts.size());
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    s += counts[i];
    c[i] = s.value();
  }
  return c;
}

PairHistogram pcc_histogram(const ZeroTable& table, double T, double beta_max, int bins,
                            SpacingScale scale, bool weighted) {
  require(bins >= 10, ErrorKind::invalid_argument, "histogram needs at least 10 bins");
  require(beta_max > 0.0, ErrorKind::invalid_argument, "histogram needs beta_max > 0");
  const PairContext ctx = make_pair_context(table, T);
  const double width = beta_max / bins;
  const std::size_t n = ctx.gamma.size();

  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = scale == SpacingScale::asymptotic ? ctx.gamma[i] * ctx.log_T / kTwoPi
                                               : smooth_main_term(ctx.gamma[i]);
  }
  const std::size_t chunks = chunk_count(ctx);
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
    const std::size_t i0 = c * kOuterChunk;
    const std::size_t i1 = std::min(n, i0 + kOuterChunk);
    for (std::size_t i = i0; i < i1; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double beta = pos[j] - pos[i];
        if (beta >= beta_max) break;
        auto b = static_cast<std::size_t>(beta / width);
        if (b >= h.size()) continue;
        double wgt = ctx.mult[i] * ctx.mult[j];
        if (weighted) wgt *= weight_w(ctx.gamma[j] - ctx.gamma[i]);
        h[b] += wgt;
      }
    }
    partial[c] = std::move(h);
  });

  PairHistogram out;
  out.T = T;
  out.scale = scale;
  out.weighted = weighted;
  out.edges = uniform_grid(0.0, beta_max, width);
  out.counts.assign(static_cast<std::size_t>(bins), 0.0);
  double norm = ctx.normalization;
  if (scale == SpacingScale::unfolded) {
    norm = 0.0;
    for (double m : ctx.mult) norm += m;
  }
  for (std::size_t b = 0; b < out.counts.size(); ++b) {
    CompensatedSum<double> s;
    for (const auto& p : partial) s += p[b];
    out.counts[b] = s.value() / norm;
  }
  return out;
}

namespace {

double sinc2_integral(double beta) {
  if (beta <= 0.0) return 0.0;
  // Unit panels in the local variable s = u - k: sin(pi*u) evaluated at large u
  // loses digits next to the integer nodes and stalls the adaptive rule.
  double total = 0.0;
  for (double k = 0.0; k < beta; k += 1.0) {
    const double width = std::min(1.0, beta - k);
    const auto panel = [k](double s) {
      const double u = k + s;
      if (k == 0.0) return sinc2(u);
      const double r = std::sin(kPi * s) / (kPi * u);
      return r * r;
    };
    total += quad::integrate(panel, 0.0, width, 1e-13).value;
  }
  return total;
}

}  // namespace

double gue_model(double beta) {
  require(beta >= 0.0, ErrorKind::invalid_argument, "gue_model needs beta >= 0");
  return beta - sinc2_integral(beta);
}

double sinc2_total_integral(double A) {
  require(A >= 1.0, ErrorKind::invalid_argument, "sinc2_total_integral needs A >= 1");
  return 2.0 * sinc2_integral(A) + 1.0 / (kPi * kPi * A);
}

HistogramComparison compare_with_gue(const PairHistogram& hist, double beta_max) {
  HistogramComparison cmp;
  const auto cum = hist.cumulative();
  for (std::size_t b = 0; b < cum.size(); ++b) {
    const double beta = hist.edges[b + 1];
    if (beta > beta_max + 1e-12) break;
    const double dev = std::abs(cum[b] - gue_model(beta));
    if (dev > cmp.sup_deviation) {
      cmp.sup_deviation = dev;
      cmp.at_beta = beta;
    }
  }
  return cmp;
}

double lemma1_window(const FAlphaSeries& series, double B) {
  require(!series.alpha.empty() && B >= series.alpha.front() && B + 1.0 <= series.alpha.back(),
          ErrorKind::out_of_range, "Lemma 1 window outside the F grid");
  std::vector<double> nodes = {B};
  for (double a : series.alpha) {
    if (a > B && a < B + 1.0) nodes.push_back(a);
  }
  nodes.push_back(B + 1.0);
  CompensatedSum<double> s;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    s += 0.5 * (nodes[k + 1] - nodes[k]) * (series.at(nodes[k]) + series.at(nodes[k + 1]));
  }
  return s.value();
}

HbReport hb_ratio(const ZeroTable& table, double T, double x, const FAlphaSeries& series) {
  require(x > 0.0, ErrorKind::invalid_argument, "hb_ratio needs x > 0");
  const PairContext ctx = make_pair_context(table, T);
  const double cutoff = series.cutoff > 0.0 ? series.cutoff : kDefaultPairCutoff;
  const double lx = std::log(x);
  const std::size_t n = ctx.gamma.size();

  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) phase[i] = ctx.gamma[i] * lx;
  const auto num = simd::cis_sum(ctx.mult, phase);

  // F(x, gamma_k) - F(x, gamma_{k-1}) = m_k^2 + 2 m_k sum_{j<k} m_j w cos(...)
  std::vector<double> inc(n, 0.0);
  const std::size_t chunks = (n + kOuterChunk - 1) / kOuterChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> amp;
    std::vector<double> ph;
    const std::size_t k1 = std::min(n, (c + 1) * kOuterChunk);
    for (std::size_t k = c * kOuterChunk; k < k1; ++k) {
      amp.clear();
      ph.clear();
      for (std::size_t j = k; j-- > 0;) {
        const double d = ctx.gamma[k] - ctx.gamma[j];
        if (d > cutoff) break;
        amp.push_back(ctx.mult[j] * weight_w(d));
        ph.push_back(lx * d);
      }
      inc[k] = ctx.mult[k] * ctx.mult[k] + 2.0 * ctx.mult[k] * simd::cis_sum(amp, ph).re;
    }
  });
  CompensatedSum<double> F;
  double max_F = 0.0;
  for (double v : inc) {
    F += v;
    max_F = std::max(max_F, F.value());
  }
  HbReport r;
  r.numerator = std::hypot(num.re, num.im);
  r.max_F = max_F;
  r.ratio = r.numerator / std::sqrt(T * max_F);
  return r;
}

ZeroStats zero_stats(const ZeroTable& table, double T) {
  require(T <= table.t_max(), ErrorKind::coverage, "zero_stats height above table coverage");
  ZeroStats s;
  s.T = T;
  const auto ord = table.ordinates();
  for (std::size_t i = 0; i < ord.size() && ord[i] <= T; ++i) {
    const auto m = table.multiplicity(i);
    s.n += m;
    if (m == 1) s.n_simple += 1.0;
  }
  s.n_star = s.n / (T / kTwoPi * std::log(T));
  s.n_star_unfolded = s.n / smooth_main_term(T);
  return s;
}

MuReport empirical_mu(const PairHistogram& hist, const ZeroStats& stats) {
  require(!hist.edges.empty() && hist.edges.back() >= 5.0 - 1e-9, ErrorKind::out_of_range,
          "empirical_mu needs a histogram covering beta in [0, 5]");
  MuReport r;
  const auto cum = hist.cumulative();
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double w = hist.edges[b + 1] - hist.edges[b];
    r.beta.push_back(0.5 * (hist.edges[b] + hist.edges[b + 1]));
    r.mu.push_back(1.0 - hist.counts[b] / w);
  }
  const double bmax = hist.edges.back();
  r.integral = 2.0 * (bmax - cum.back());
  r.tail = 1.0 - 2.0 * (bmax - gue_model(bmax));
  r.total = r.integral + r.tail;
  r.n_star = hist.scale == SpacingScale::unfolded ? stats.n_star_unfolded : stats.n_star;
  return r;
}

}  // namespace pclab
