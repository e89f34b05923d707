#ifndef QMEASURE_POINTER_OPT_HPP
#define QMEASURE_POINTER_OPT_HPP

#include <string>
#include <vector>

#include "qmeasure/matrix.hpp"

namespace qmeasure {
namespace pointer {

// Homodyne post-processing pointers h(Y_t) of the weighted photocurrent
// endpoint. beta_t = sqrt(1 - e^{-t}); the headline constants are quoted in
// the t -> infinity limit (beta = 1). For finite t the unbiasedness
// constraint scales the rational sigma_x constant as C1(t) = C1(inf)/beta_t
// and the sigma_z constants as D2(t) = D2(inf)/beta_t^2 (D3 follows from D2).
enum class Target { sigma_x, sigma_z };

enum class PointerKind { rational, linear, quadratic };

struct PointerSpec {
  PointerKind kind = PointerKind::rational;
  Target target = Target::sigma_x;
  double t = 0.0;  // interaction time; t <= 0 encodes the t -> infinity limit
  // rational: (c1 x + c2)/(x^2 + eps) + c3
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, eps = 1.0;
  // quadratic: d4 x^2 + d5 x + d6 (linear uses d5 only)
  double d4 = 0.0, d5 = 0.0, d6 = 0.0;

  double evaluate(double y) const;
  std::string describe() const;
};

// The two diagonal entries of Sigma^2 = ||int h^2 p - (int h p)^2||.
struct QualityPair {
  double d1 = 0.0;  // sigma_+ sigma_- corner
  double d2 = 0.0;
  double sigma = 0.0;  // sqrt(max(d1, d2))
};

double beta_of_t(double t);  // sqrt(1 - e^{-t}); t <= 0 -> 1

// Weights of 1, sigma_x, sigma_+sigma_- in the endpoint density p(y).
struct DensityWeights {
  double unit = 0.0;
  double sx = 0.0;
  double spm = 0.0;
};
DensityWeights density_p(double y, double t);

// Scalar density q(y) = rho(p(y)) for the Bloch vector (px, py, pz).
double density_q(double y, double t, double px, double pz);

// Naive pointers: Y = omega_t/(2 - 2 e^{-t/2}) and the quadratic Ytilde.
// Sigma^2(t) = t/(2 - 2e^{-t/2})^2 + 1,
// Sigmatilde^2(t) = t^2/(8 (e^{-t/2}-1)^4) + (2t - 4 (e^{-t/2}-1)^2)/(e^{-t/2}-1)^2.
struct NaiveQualities {
  double sigma2;
  double sigma2_tilde;
};
NaiveQualities naive_qualities(double t);

// 1-D minima of the two naive qualities (both sit at t = 2.513).
struct NaiveMinima {
  double t_sigma, sigma2;
  double t_tilde, sigma2_tilde;
};
NaiveMinima naive_minima();

// Linear pointer y/beta and quadratic sigma_z pointer beta^{-2} y^2 - (1+beta^2).
struct SimpleQualities {
  double sigma2_linear;
  double sigma2_quad;
};
SimpleQualities simple_pointer_qualities(double t);

// Closed forms of d1, d2 for the rational families, parameterized by eps
// (sigma_x target) or delta (sigma_z target).
QualityPair d1_d2(Target target, double param, double t);

// The rational pointer with constants fixed by the unbiasedness constraint.
PointerSpec rational_spec(Target target, double param, double t);

// Quadrature-oracle evaluation of the same quantity straight from the
// density (independent of the I/J closed forms). `off_diag` reports the
// magnitude of the off-diagonal entry, which should vanish.
QualityPair quality_from_quadrature(const PointerSpec& spec, double* off_diag = nullptr);

// Minimize max(d1, d2) over the family parameter (golden section after a
// 200-point log-spaced pre-scan of [0.05, 10], then a parabolic polish).
struct OptimizedPointer {
  PointerSpec spec;
  QualityPair quality;
  double param;  // optimal eps or delta
};
OptimizedPointer optimize_pointer(Target target, double t);

// || int h(y) p(y) dy - target || by adaptive quadrature.
double unbiasedness_residual(const PointerSpec& spec);

// Frobenius-Perron output density of a rational pointer at the given grid
// points for input Bloch vector (px, py, pz); zero outside the range.
struct DensitySample {
  double x;
  double density;
};
std::vector<DensitySample> output_density(const PointerSpec& spec,
                                          double px, double pz,
                                          const std::vector<double>& grid);

// support of the rational pointer's distribution
struct Support {
  double lo, hi;
};
Support output_support(const PointerSpec& spec);

}  // namespace pointer
}  // namespace qmeasure

#endif
