#pragma once

#include <cstddef>
#include <functional>

namespace pclab::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (15 point) on a finite interval.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, unsigned max_depth = 20);

// Composite version: applies integrate() on each [nodes[i], nodes[i+1]].
// Use it to put kinks and removable singularities on panel edges.
Result integrate_panels(const std::function<double(double)>& f,
                        const double* nodes, std::size_t count,
                        double rel_tol = 1e-12);

}  // namespace pclab::quad
