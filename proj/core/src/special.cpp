#include "qmeasure/special.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeasure {

double erf(double x) { return std::erf(x); }

double I_eps(double eps) {
  if (eps <= 0.0) throw std::invalid_argument("I_eps: eps must be > 0");
  // pi/sqrt(eps) * e^{eps/2} erfc(sqrt(eps/2)); erfc avoids cancellation.
  const double pi = 3.1415926535897932384626433832795;
  return pi / std::sqrt(eps) * std::exp(0.5 * eps) * std::erfc(std::sqrt(0.5 * eps));
}

double J_eps(double eps) {
  if (eps <= 0.0) throw std::invalid_argument("J_eps: eps must be > 0");
  return (kSqrt2Pi + (1.0 - eps) * I_eps(eps)) / (2.0 * eps);
}

double gauss_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double gauss_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730950488016887242097); }

}  // namespace qmeasure
