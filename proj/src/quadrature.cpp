#include "pclab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace pclab::quad {

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, unsigned max_depth) {
  if (a == b) return {};
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &err);
  return {v, err * std::abs(v)};
}

Result integrate_panels(const std::function<double(double)>& f,
                        const double* nodes, std::size_t count, double rel_tol) {
  Result total;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const Result r = integrate(f, nodes[i], nodes[i + 1], rel_tol);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

}  // namespace pclab::quad
