#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pclab/arith.hpp"
#include "pclab/zero_store.hpp"

namespace pclab {

using cplx = std::complex<double>;

// One evaluation of a two-sided formula.
struct ExplicitEvalReport {
  double x = 0.0;
  cplx s;                 // (sigma, t) where relevant
  cplx lhs;
  cplx rhs;
  double residual = 0.0;  // |lhs - rhs|
  double zero_height = 0.0;
  double prime_cutoff = 0.0;
  double truncation_estimate = 0.0;
};

// min((n/x)^(1/2), (x/n)^(3/2))
double a_weight(std::uint64_t n, double x);

// 2 Re sum_{0 < gamma <= T} x^rho / rho with rho = 1/2 + i gamma.
double zero_sum(double x, const ZeroTable& table, double T);

// lhs: x - zero_sum - log 2pi - 1/2 log(1 - x^-2); rhs: sieve psi_0(x).
ExplicitEvalReport psi_from_zeros(double x, const ZeroTable& table, double T,
                                  const PrimeTable& primes);

// -(2pi/T) Re sum_{0 < gamma <= T} x^(1/2 + i gamma)
double landau_detect(double x, const ZeroTable& table, double T);

struct MontgomeryOptions {
  double zero_height = 0.0;      // 0: table coverage
  std::uint64_t prime_cutoff = 0;  // 0: sieve limit
  bool tail_corrections = true;  // add the smooth estimate of the n > cutoff prime terms
};

struct MontgomeryReport {
  ExplicitEvalReport report;  // rhs with x^-1/2 log(|t|+2) and the O-terms set to 0
  cplx rhs_exact;             // rhs with x^-1/2 zeta'/zeta(-1/2+it) and trivial zeros
  double residual_exact = 0.0;
  double zero_tail_bound = 0.0;
  cplx prime_tail;  // smooth estimate of the dropped n > cutoff terms
};

MontgomeryReport montgomery_formula(double x, double t, const ZeroTable& zeros,
                                    const PrimeTable& primes,
                                    const MontgomeryOptions& options = {});

// Lambda(n) for n <= x, Lambda(n) log(x^2/n) / log x on (x, x^2], 0 beyond:
// a linear taper in log n. This normalization is the one under which the
// smoothed log-derivative identity holds exactly.
double lambda_x(std::uint64_t n, double x, const PrimeTable& primes);

struct SelbergApproxValue {
  double value = 0.0;      // approximation to S(t)
  double error_sum = 0.0;  // |sum Lambda_x(n) n^(-sigma_1 - it)| / log x
  double error_log = 0.0;  // log t / log x
};

// Dirichlet polynomial approximation of S(t) with the Lambda_x weights,
// precomputed for one x.
class SelbergApprox {
 public:
  SelbergApprox(double x, const PrimeTable& primes);
  SelbergApproxValue operator()(double t) const;
  double x() const { return x_; }
  double sigma1() const { return sigma1_; }

 private:
  double x_;
  double sigma1_;
  std::vector<double> log_n_;
  std::vector<double> amp_;  // Lambda_x(n) n^-sigma_1
};

SelbergApproxValue selberg_s_approx(double t, double x, const PrimeTable& primes);

// zeta'/zeta(s) against the smoothed explicit formula with Lambda_x weights.
ExplicitEvalReport smoothed_logderiv_check(cplx s, double x, const ZeroTable& zeros,
                                           const PrimeTable& primes, double zero_height = 0.0);

}  // namespace pclab
