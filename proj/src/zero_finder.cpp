#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pclab/error.hpp"
#include "pclab/parallel.hpp"
#include "pclab/zeta.hpp"

namespace pclab {
namespace {

struct Sample {
  double t;
  double z;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Illinois iteration on a sign-change bracket. Each step also probes a point
// just under tol away on the far side, so the returned ordinate is always
// the midpoint of a verified bracket of width <= tol.
double refine(Sample lo, Sample hi, double tol) {
  const double probe = 0.45 * tol;
  int stuck_side = 0;
  for (int iter = 0; iter < 200; ++iter) {
    if (hi.t - lo.t <= tol) break;
    double c = (lo.t * hi.z - hi.t * lo.z) / (hi.z - lo.z);
    if (!(c > lo.t && c < hi.t)) c = 0.5 * (lo.t + hi.t);
    const double fc = hardy_Z(c);
    if (fc == 0.0) return c;
    const bool left = sign_of(fc) == sign_of(lo.z);
    if (left) {
      lo = {c, fc};
      if (stuck_side == 1) hi.z *= 0.5;
      stuck_side = 1;
    } else {
      hi = {c, fc};
      if (stuck_side == -1) lo.z *= 0.5;
      stuck_side = -1;
    }
    if (hi.t - lo.t <= tol) break;
    // probe toward the opposite end
    const double q = left ? c + probe : c - probe;
    if (q > lo.t && q < hi.t) {
      const double fq = hardy_Z(q);
      if (fq == 0.0) return q;
      if (sign_of(fq) == sign_of(lo.z)) {
        lo = {q, fq};
      } else {
        hi = {q, fq};
      }
    }
  }
  return 0.5 * (lo.t + hi.t);
}

std::vector<Sample> subdivide(const std::vector<Sample>& pts) {
  constexpr int kFactor = 8;
  std::vector<Sample> out;
  out.reserve((pts.size() - 1) * kFactor + 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    out.push_back(pts[i]);
    const double a = pts[i].t;
    const double b = pts[i + 1].t;
    for (int k = 1; k < kFactor; ++k) {
      const double t = a + (b - a) * k / kFactor;
      out.push_back({t, hardy_Z(t)});
    }
  }
  out.push_back(pts.back());
  return out;
}

std::size_t count_changes(const std::vector<Sample>& pts) {
  std::size_t c = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (sign_of(pts[i].z) * sign_of(pts[i + 1].z) < 0) ++c;
  }
  return c;
}

}  // namespace

ZeroTable find_zeros(double T, double tol, const ZeroSearchOptions& options) {
  require(T >= 14.0, ErrorKind::invalid_argument, "find_zeros needs T >= 14");
  require(T <= options.height_cap, ErrorKind::height_cap,
          "find_zeros height above the computation cap (ingest a table instead)");
  require(tol > 0.0 && tol < 0.1, ErrorKind::invalid_argument, "find_zeros needs 0 < tol < 0.1");

  // Gram points g_{-1} .. g_n with some room above T, extended below until
  // the last one is good.
  const auto n_top = static_cast<std::int64_t>(riemann_siegel_theta(T) / std::numbers::pi) + 2;
  std::vector<Sample> gram(static_cast<std::size_t>(n_top + 2));
  parallel_for(gram.size(), [&](std::size_t i) {
    const double g = gram_point(static_cast<std::int64_t>(i) - 1);
    gram[i] = {g, hardy_Z(g)};
  });
  auto is_good = [&](std::size_t i) {
    const std::int64_t n = static_cast<std::int64_t>(i) - 1;
    return (n % 2 == 0 ? 1.0 : -1.0) * gram[i].z > 0.0;
  };
  while (gram.back().t < T || !is_good(gram.size() - 1)) {
    const double g = gram_point(static_cast<std::int64_t>(gram.size()) - 1);
    gram.push_back({g, hardy_Z(g)});
  }
  require(is_good(0), ErrorKind::internal, "Gram point g_-1 is not good");

  // Rosser blocks between consecutive good Gram points.
  struct Block {
    std::size_t first;
    std::size_t last;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i + 1 < gram.size();) {
    std::size_t j = i + 1;
    while (!is_good(j)) ++j;
    blocks.push_back({i, j});
    i = j;
  }

  std::vector<std::vector<double>> found(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t b) {
    const auto [first, last] = blocks[b];
    const std::size_t expected = last - first;
    std::vector<Sample> pts(gram.begin() + static_cast<std::ptrdiff_t>(first),
                            gram.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    for (int depth = 0; count_changes(pts) < expected; ++depth) {
      if (depth >= options.max_subdivision_depth) {
        fail(ErrorKind::missed_zero,
             "found " + std::to_string(count_changes(pts)) + " of " + std::to_string(expected) +
                 " zeros between Gram points at " + std::to_string(gram[first].t) + " and " +
                 std::to_string(gram[last].t));
      }
      pts = subdivide(pts);
    }
    require(count_changes(pts) == expected, ErrorKind::missed_zero,
            "more sign changes than the Gram block allows near " + std::to_string(gram[first].t));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (sign_of(pts[i].z) * sign_of(pts[i + 1].z) < 0) {
        found[b].push_back(refine(pts[i], pts[i + 1], tol));
      }
    }
  });

  std::vector<double> all;
  for (const auto& f : found) all.insert(all.end(), f.begin(), f.end());
  const double g_end = gram.back().t;
  const auto predicted = static_cast<std::int64_t>(std::llround(smooth_main_term(g_end)));
  require(static_cast<std::int64_t>(all.size()) == predicted, ErrorKind::missed_zero,
          "zero count " + std::to_string(all.size()) + " below Gram point " +
              std::to_string(g_end) + " disagrees with the counting formula (" +
              std::to_string(predicted) + ")");

  all.erase(std::upper_bound(all.begin(), all.end(), T), all.end());
  ZeroTable::Info info{ZeroSource::computed, {}, ZeroFileFormat::plain_ordinates, tol};
  return ZeroTable(std::move(all), T, std::move(info));
}

}  // namespace pclab
