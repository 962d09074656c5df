#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pclab/zero_store.hpp"

namespace pclab {

inline constexpr double kDefaultPairCutoff = 200.0;

double weight_w(double u);

// (sin(pi u) / (pi u))^2 with the removable singularity handled.
double sinc2(double u);

// A test function r, its transform r_hat and the support radius of r_hat
// (infinity when unbounded). `envelope(u)` bounds |r(v)| for all |v| >= u.
struct FourierPair {
  std::string name;
  std::function<double(double)> r;
  std::function<double(double)> r_hat;
  std::function<double(double)> envelope;
  double support_radius = std::numeric_limits<double>::infinity();
};

FourierPair fejer_pair(double lambda);
FourierPair selberg_minorant_pair();
FourierPair zero_pair();

// Zeros up to T with the counting normalization (T/2pi) log T.
struct PairContext {
  std::vector<double> gamma;
  std::vector<double> mult;
  double T = 0.0;
  double log_T = 0.0;
  double normalization = 0.0;
  double density = 0.0;  // most zeros in a unit interval below T
};

PairContext make_pair_context(const ZeroTable& table, double T);

struct FAlphaSeries {
  double T = 0.0;
  double normalization = 0.0;  // (T/2pi) log T
  double cutoff = 0.0;
  std::vector<double> alpha;
  std::vector<double> F;
  double tail_bound = 0.0;  // bound on the dropped |gamma - gamma'| > cutoff part
  bool tail_warning = false;
  std::size_t zero_count = 0;

  // Linear interpolation, extended evenly to alpha < 0.
  double at(double a) const;
};

std::vector<double> uniform_grid(double a0, double a1, double step);

// Normalized Montgomery form factor; tail_tolerance sets tail_warning.
FAlphaSeries f_alpha(const ZeroTable& table, double T, std::span<const double> alphas,
                     double cutoff = kDefaultPairCutoff, double tail_tolerance = 1e-3);

// Bound on the normalized contribution of pairs with |gamma - gamma'| > cutoff
// for a kernel bounded by sup_r.
double pair_tail_bound(const PairContext& ctx, double cutoff, double sup_r = 1.0);

struct PairSumResult {
  double direct = 0.0;     // sum over pairs of r((g - g') log T / 2pi) w(g - g')
  double transform = std::numeric_limits<double>::quiet_NaN();  // (T/2pi) log T int r_hat F
  double normalized_direct = 0.0;
  double normalized_transform = std::numeric_limits<double>::quiet_NaN();
  double tail_bound = 0.0;  // normalized
  double relative_difference = std::numeric_limits<double>::quiet_NaN();
};

// Both sides of the pair-sum identity. The transform route needs a finite
// support radius and integrates r_hat F with the trapezoid rule at alpha_step.
PairSumResult pair_sum(const ZeroTable& table, double T, const FourierPair& pair,
                       double cutoff = kDefaultPairCutoff, double alpha_step = 0.005);

// Root of lambda - 1 + 2 lambda int_0^1 alpha h_hat(lambda alpha) d alpha.
double small_gap_function(double lambda, double quad_tol = 1e-12);
double small_gap_threshold(double quad_tol = 1e-12);

enum class SpacingScale {
  asymptotic,  // beta = (g' - g) log T / 2pi, counts / ((T/2pi) log T)
  unfolded,    // beta = smooth(g') - smooth(g), counts / N(T)
};

struct PairHistogram {
  double T = 0.0;
  SpacingScale scale = SpacingScale::asymptotic;
  bool weighted = false;
  std::vector<double> edges;   // bins [edges[i], edges[i+1])
  std::vector<double> counts;  // normalized
  std::vector<double> cumulative() const;  // at right edges
};

PairHistogram pcc_histogram(const ZeroTable& table, double T, double beta_max, int bins,
                            SpacingScale scale = SpacingScale::asymptotic,
                            bool weighted = false);

// int_0^beta 1 - sinc^2(u) du by adaptive quadrature.
double gue_model(double beta);
// int_{-A}^{A} sinc^2 by quadrature plus the 1/(pi^2 A) tail.
double sinc2_total_integral(double A = 1000.0);

struct HistogramComparison {
  double sup_deviation = 0.0;
  double at_beta = 0.0;
};

HistogramComparison compare_with_gue(const PairHistogram& hist, double beta_max);

double lemma1_window(const FAlphaSeries& series, double B);

// |sum_{g <= T} x^{i g}| / sqrt(T max_{t <= T} F(x, t)), F unnormalized.
struct HbReport {
  double numerator = 0.0;
  double max_F = 0.0;
  double ratio = 0.0;
};

HbReport hb_ratio(const ZeroTable& table, double T, double x, const FAlphaSeries& series);

struct ZeroStats {
  double T = 0.0;
  double n = 0.0;          // zeros with multiplicity
  double n_simple = 0.0;   // N_s(T)
  double n_star = 0.0;     // sum m / ((T/2pi) log T)
  double n_star_unfolded = 0.0;  // sum m / smooth_main_term(T)
};

ZeroStats zero_stats(const ZeroTable& table, double T);

struct MuReport {
  std::vector<double> beta;  // bin centres
  std::vector<double> mu;    // 1 - d/dbeta cumulative
  double integral = 0.0;     // int over [-beta_max, beta_max] of mu
  double tail = 0.0;         // 2 int_{beta_max}^inf sinc^2
  double total = 0.0;        // integral + tail
  double n_star = 0.0;
};

MuReport empirical_mu(const PairHistogram& hist, const ZeroStats& stats);

}  // namespace pclab
