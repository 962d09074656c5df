#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pclab/error.hpp"
#include "pclab/explicit_formula.hpp"
#include "pclab/zeta.hpp"

using namespace pclab;

namespace {

const ZeroTable& zeros() {
  static const ZeroTable z = find_zeros(1e4);
  return z;
}

const PrimeTable& primes() {
  static const PrimeTable p = sieve_build(2'000'000);
  return p;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST_CASE("weights") {
  CHECK(a_weight(50, 50.0) == 1.0);
  CHECK(a_weight(25, 100.0) == doctest::Approx(0.5));
  CHECK(a_weight(400, 100.0) == doctest::Approx(0.125));
  CHECK(lambda_x(7, 10.0, primes()) == doctest::Approx(std::log(7.0)));
  CHECK(lambda_x(100, 10.0, primes()) == 0.0);  // n = x^2
  CHECK(lambda_x(101, 10.0, primes()) == 0.0);
  // linear in log n between x and x^2: half weight at n = x^(3/2)
  CHECK(lambda_x(8, 4.0, primes()) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(lambda_x(12, 10.0, primes()) == 0.0);
}

TEST_CASE("zero sum is symmetric in the conjugate pairs") {
  // direct evaluation of sum over +-gamma of x^rho / rho
  const double x = 37.5;
  double ref = 0.0;
  for (double g : zeros().ordinates()) {
    for (double s : {1.0, -1.0}) {
      const cplx rho(0.5, s * g);
      ref += (std::exp(rho * std::log(x)) / rho).real();
    }
  }
  CHECK(zero_sum(x, zeros(), 0.0) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("psi from zeros") {
  const auto r = psi_from_zeros(100.5, zeros(), 1e4, primes());
  CHECK(r.residual < 0.5);
  CHECK(r.rhs.real() == doctest::Approx(oracle::psi(100.5)));
  CHECK(psi_from_zeros(1.5, zeros(), 1e4, primes()).residual < 0.1);
  CHECK(r.truncation_estimate > 0.0);
  CHECK(kind_of([] { psi_from_zeros(10.5, zeros(), 2e4, primes()); }) == ErrorKind::coverage);
}

TEST_CASE("psi residual shrinks as the zero height grows") {
  double prev = INFINITY;
  for (double T : {1250.0, 2500.0, 5000.0, 1e4}) {
    const double r = psi_from_zeros(100.5, zeros(), T, primes()).residual;
    CHECK(r <= 1.2 * prev);
    prev = r;
  }
}

TEST_CASE("prime detection") {
  CHECK(landau_detect(2.0, zeros(), 1e4) == doctest::Approx(std::log(2.0)).epsilon(0.15));
  CHECK(std::abs(landau_detect(2.5, zeros(), 1e4)) < 0.1);
  CHECK(std::abs(landau_detect(6.0, zeros(), 1e4)) < 0.1);
  CHECK(landau_detect(13.0, zeros(), 1e4) == doctest::Approx(std::log(13.0)).epsilon(0.1));
}

TEST_CASE("Montgomery formula") {
  const auto r = montgomery_formula(50.0, 30.0, zeros(), primes());
  CHECK(r.report.residual < 0.5);
  CHECK(r.residual_exact < 0.01);
  CHECK(r.residual_exact <= r.zero_tail_bound + 1e-3);
  // x = 1: the zero side is 2 sum over +-gamma of 1 / (1 + (t - gamma)^2)
  const auto one = montgomery_formula(1.0, 30.0, zeros(), primes());
  double lhs = 0.0;
  for (double g : zeros().ordinates()) lhs += 2.0 * (1.0 / (1.0 + (30 - g) * (30 - g)) + 1.0 / (1.0 + (30 + g) * (30 + g)));
  CHECK(std::abs(one.report.lhs - cplx(lhs, 0.0)) < 1e-10);
  CHECK(kind_of([] { montgomery_formula(50.0, 9950.0, zeros(), primes()); }) == ErrorKind::coverage);
}

TEST_CASE("Montgomery residual with larger t stays in the envelope") {
  for (double t : {100.0, 500.0}) {
    const auto r = montgomery_formula(50.0, t, zeros(), primes());
    CHECK(r.report.residual < 3.0 * std::log(t + 2.0) / std::sqrt(50.0));
  }
}

TEST_CASE("smoothed log-derivative formula") {
  const ZeroTable z = zeros().truncated(1000.0);
  CHECK(smoothed_logderiv_check(cplx(2, 3), 10.0, z, primes()).residual < 1e-3);
  const auto far = smoothed_logderiv_check(cplx(10, 3), 10.0, z, primes());
  CHECK(far.residual < 1e-8);
  CHECK(std::abs(far.lhs + std::log(2.0) * std::exp(-cplx(10, 3) * std::log(2.0))) < 2e-3);
  const double r15 = smoothed_logderiv_check(cplx(1.5, 50), 10.0, z, primes()).residual;
  const double r25 = smoothed_logderiv_check(cplx(2.5, 50), 10.0, z, primes()).residual;
  CHECK(r25 < 0.5 * r15);
  CHECK(kind_of([&] { smoothed_logderiv_check(cplx(0.5, 14.134725), 10.0, z, primes()); }) ==
        ErrorKind::near_singularity);
  CHECK(kind_of([&] { smoothed_logderiv_check(cplx(1, 0), 10.0, z, primes()); }) == ErrorKind::near_singularity);
  CHECK(kind_of([&] { smoothed_logderiv_check(cplx(-2, 0), 10.0, z, primes()); }) == ErrorKind::domain);
}

TEST_CASE("Selberg approximation of S(t)") {
  const SelbergApprox a(20.0, primes());
  CHECK(a.sigma1() == doctest::Approx(0.5 + 1 / std::log(20.0)));
  double corr_num = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  double err2 = 0, s2 = 0;
  int n = 0;
  for (double t = 100.0; t <= 1000.0; t += 0.25) {
    const double v = a(t).value;
    const double s = s_of_t(t, zeros());
    corr_num += v * s;
    sa += v;
    sb += s;
    saa += v * v;
    sbb += s * s;
    err2 += (v - s) * (v - s);
    s2 += s * s;
    ++n;
  }
  const double corr = (corr_num - sa * sb / n) / std::sqrt((saa - sa * sa / n) * (sbb - sb * sb / n));
  CHECK(corr > 0.6);
  CHECK(err2 <= s2);
  CHECK(kind_of([] { selberg_s_approx(3.0, 10.0, primes()); }) == ErrorKind::domain);
  CHECK(kind_of([] { selberg_s_approx(100.0, 2.0, primes()); }) == ErrorKind::domain);
  const auto v = a(500.0);
  CHECK(v.error_log == doctest::Approx(std::log(500.0) / std::log(20.0)));
  CHECK(v.error_sum > 0.0);
}

TEST_CASE("Selberg approximation second moment") {
  // x = sqrt(T): mean square within a factor 3 of (1/2pi^2) T log log T
  const double T = 1e4;
  const SelbergApprox a(100.0, primes());
  double m = 0.0;
  const double h = 0.25;
  for (double t = 10.0 + h / 2; t < T; t += h) m += std::pow(a(t).value, 2) * h;
  const double model = T * std::log(std::log(T)) / (2 * M_PI * M_PI);
  CHECK(m / model > 1.0 / 3.0);
  CHECK(m / model < 3.0);
}
