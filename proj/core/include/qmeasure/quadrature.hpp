#ifndef QMEASURE_QUADRATURE_HPP
#define QMEASURE_QUADRATURE_HPP

#include <functional>

namespace qmeasure {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;       // accumulated error estimate
  long evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss(7)/Kronrod(15) bisection on [a, b] to absolute tolerance.
// Kronrod nodes are interior, so integrable endpoint singularities are
// handled by depth-limited refinement without ever sampling the endpoints.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, int max_depth = 60);

}  // namespace qmeasure

#endif
