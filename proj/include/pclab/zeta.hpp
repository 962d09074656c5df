#pragma once

#include <complex>
#include <cstdint>

#include "pclab/zero_store.hpp"

namespace pclab {

class PrimeTable;

using cplx = std::complex<double>;

inline constexpr double kZetaHeightCap = 1e5;
inline constexpr double kZetaMinTolerance = 1e-12;

struct ZetaEvaluation {
  cplx s;
  cplx value;
  cplx derivative;        // filled by zeta_and_derivative only
  int em_order = 0;       // number of Bernoulli correction terms
  std::int64_t terms = 0; // truncation index N of the direct sum
  double error_estimate = 0.0;     // Euler-Maclaurin remainder bound
  double rounding_estimate = 0.0;  // floating-point error of the direct sum
};

// Euler-Maclaurin summation with the remainder bounded by
// |s + 2M + 1| / (sigma + 2M + 1) times the first omitted term.
ZetaEvaluation zeta(cplx s, double tol = 1e-12);
ZetaEvaluation zeta_and_derivative(cplx s, double tol = 1e-12);

// zeta'/zeta as a quotient of Euler-Maclaurin values. Throws
// near_singularity when s is within 1e-6 of a zero (Newton distance).
cplx log_deriv_zeta(cplx s, double tol = 1e-12);

struct SeriesValue {
  cplx value;
  double tail_bound = 0.0;
};

// -sum Lambda(n) n^-s over the sieve, plus the smooth tail
// -int_N^inf u^-s du; needs sigma > 1.
SeriesValue log_deriv_zeta_series(cplx s, const PrimeTable& table);

double riemann_siegel_theta(double t);

// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t. Uses
// Euler-Maclaurin below kRiemannSiegelSwitch and Riemann-Siegel above.
inline constexpr double kRiemannSiegelSwitch = 1000.0;
double hardy_Z(double t);
double hardy_Z_euler_maclaurin(double t);
double hardy_Z_riemann_siegel(double t);

// g_n with theta(g_n) = n pi, for n >= -1.
double gram_point(std::int64_t n);

struct ZeroSearchOptions {
  double height_cap = 1e4;
  int max_subdivision_depth = 4;
};

// All zero ordinates in (0, T], refined to |error| <= tol.
ZeroTable find_zeros(double T, double tol = 1e-10, const ZeroSearchOptions& options = {});

}  // namespace pclab
