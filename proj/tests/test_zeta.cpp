#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pclab/arith.hpp"
#include "pclab/error.hpp"
#include "pclab/zeta.hpp"

using namespace pclab;

namespace {

// Reference values from mpmath at 30 digits, frozen.
struct Point {
  double t;
  double value;
};

constexpr Point kTheta[] = {{10, -3.0670743962898952917}, {30, 8.0578001365639901994},
                            {49.9, 26.357709641639094708}, {50.1, 26.565122502084204849},
                            {100, 87.972165231787219625},  {1000, 2034.5464280380316087},
                            {5000, 14197.89761760219781}};

constexpr Point kZ[] = {{18, 2.3367996899169519091},      {100, 2.692697056664463475},
                        {999, -0.71184713811289880917},   {1001.5, -0.54758292630913059967},
                        {5000.25, 0.052100543914359267735}, {20000.5, -3.1479473825734679054}};

constexpr double kZeros[] = {14.13472514173469379,  21.022039638771554993, 25.010857580145688763,
                             30.42487612585951321,  32.935061587739189691, 37.586178158825671257,
                             40.918719012147495187, 43.327073280914999519, 48.005150881167159728,
                             49.773832477672302182};

constexpr Point kGram[] = {{-1, 9.6669080561301921413}, {0, 17.845599540410860817},
                           {1, 23.170282701246309279},  {100, 238.58259051450292333},
                           {1000, 1421.2563890327501587}};

}  // namespace

TEST_CASE("zeta at classical points") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  // default tolerance is 1e-12 absolute
  CHECK(std::abs(zeta(2.0).value.real() - pi2 / 6) < 1e-12);
  CHECK(std::abs(zeta(4.0).value.real() - pi2 * pi2 / 90) < 1e-12);
  CHECK(std::abs(zeta(3.0).value.real() - 1.2020569031595942854) < 1e-12);
  CHECK_THROWS_AS(zeta(2.0, 1e-14), Error);
  CHECK(zeta(0.0).value.real() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(zeta(-1.0).value.real() == doctest::Approx(-1.0 / 12).epsilon(1e-12));
}

TEST_CASE("zeta off the real axis against frozen values") {
  const auto a = zeta(cplx(0.5, 10)).value;
  CHECK(a.real() == doctest::Approx(1.5448952202967527669).epsilon(1e-12));
  CHECK(a.imag() == doctest::Approx(-0.11533646527127337544).epsilon(1e-11));
  const auto b = zeta(cplx(2, 3)).value;
  CHECK(b.real() == doctest::Approx(0.79802198514627572062).epsilon(1e-13));
  CHECK(b.imag() == doctest::Approx(-0.11374430805293850022).epsilon(1e-12));
  const auto c = zeta(cplx(-0.5, 30)).value;
  CHECK(c.real() == doctest::Approx(-3.7182319024768977506).epsilon(1e-12));
  CHECK(c.imag() == doctest::Approx(-0.36369536251727547587).epsilon(1e-11));
}

TEST_CASE("zeta reports its truncation") {
  const auto e = zeta(cplx(0.5, 100), 1e-10);
  CHECK(e.error_estimate <= 1e-10);
  CHECK(e.terms > 0);
  CHECK(e.em_order > 0);
  CHECK_THROWS_AS(zeta(1.0), Error);
}

TEST_CASE("derivative against a central difference") {
  for (cplx s : {cplx(2, 3), cplx(0.5, 20), cplx(-0.5, 30)}) {
    const auto e = zeta_and_derivative(s);
    const double h = 1e-5;
    const cplx fd = (zeta(s + h).value - zeta(s - h).value) / (2 * h);
    CHECK(std::abs(e.derivative - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("log derivative: quotient route vs prime series route") {
  const PrimeTable p = sieve_build(2'000'000);
  for (cplx s : {cplx(2, 0), cplx(2, 3), cplx(3, 50)}) {
    const cplx q = log_deriv_zeta(s);
    const auto ser = log_deriv_zeta_series(s, p);
    CHECK(std::abs(q - ser.value) < 1e-9 + ser.tail_bound);
  }
  const cplx ref(0.16833366780238487541, 0.050953075983162219021);
  CHECK(std::abs(log_deriv_zeta(cplx(2, 3)) - ref) < 1e-12);
  const cplx ref2(-1.851745765512008883, 0.43237377838646082125);
  CHECK(std::abs(log_deriv_zeta(cplx(-0.5, 30)) - ref2) < 1e-10);
  CHECK_THROWS_AS(log_deriv_zeta(cplx(0.5, 14.134725141734693)), Error);
}

TEST_CASE("theta against frozen values") {
  for (const auto& p : kTheta)
    CHECK(riemann_siegel_theta(p.t) == doctest::Approx(p.value).epsilon(1e-13));
}

TEST_CASE("Z against frozen values") {
  for (const auto& p : kZ) CHECK(std::abs(hardy_Z(p.t) - p.value) < 1e-9);
}

TEST_CASE("Z by Euler-Maclaurin and Riemann-Siegel agree") {
  for (double t = 300.0; t < 3000.0; t += 97.31) {
    const double em = hardy_Z_euler_maclaurin(t);
    const double rs = hardy_Z_riemann_siegel(t);
    CHECK(std::abs(em - rs) < 1e-8);
  }
}

TEST_CASE("Z is real-valued zeta on the critical line") {
  for (double t : {20.0, 77.7, 400.0}) {
    const cplx z = zeta(cplx(0.5, t)).value;
    CHECK(std::abs(std::abs(z) - std::abs(hardy_Z(t))) < 1e-10);
  }
}

TEST_CASE("Gram points") {
  for (const auto& p : kGram) {
    const double g = gram_point(static_cast<std::int64_t>(p.t));
    CHECK(g == doctest::Approx(p.value).epsilon(1e-13));
    CHECK(riemann_siegel_theta(g) == doctest::Approx(p.t * std::numbers::pi).epsilon(1e-12));
  }
}

TEST_CASE("zero finder reproduces the first ordinates") {
  const ZeroTable z = find_zeros(100.0, 1e-12);
  REQUIRE(z.size() == 29);
  for (std::size_t i = 0; i < std::size(kZeros); ++i) CHECK(std::abs(z.ordinates()[i] - kZeros[i]) < 1e-11);
}

TEST_CASE("zero finder count matches the counting formula") {
  const ZeroTable z = find_zeros(1000.0);
  CHECK(z.size() == 649);
  const ZeroTable big = find_zeros(5000.0);
  std::vector<double> g(big.ordinates().begin(), big.ordinates().end());
  // Z changes sign across each returned ordinate
  for (std::size_t i = 1; i + 1 < g.size(); i += 37) {
    const double before = 0.5 * (g[i - 1] + g[i]);
    const double after = 0.5 * (g[i] + g[i + 1]);
    CHECK(hardy_Z(before) * hardy_Z(after) < 0);
  }
  CHECK(std::abs(oracle::count(g, 4999.0) - oracle::smooth(4999.0)) < 3.0);
}

TEST_CASE("zero finder respects its height cap") {
  try {
    find_zeros(2e4);
    FAIL("height cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::height_cap);
  }
}
