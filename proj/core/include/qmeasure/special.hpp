#ifndef QMEASURE_SPECIAL_HPP
#define QMEASURE_SPECIAL_HPP

namespace qmeasure {

inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// Error function erf(x) = 2/sqrt(pi) * int_0^x exp(-u^2) du.
double erf(double x);

// I(eps) = int exp(-x^2/2)/(x^2+eps) dx = pi sqrt(e^eps/eps) (1 - erf(sqrt(eps/2))).
double I_eps(double eps);

// J(eps) = int exp(-x^2/2)/(x^2+eps)^2 dx = (sqrt(2 pi) + (1-eps) I(eps)) / (2 eps).
double J_eps(double eps);

// standard normal density
double gauss_pdf(double x);

// standard normal CDF
double gauss_cdf(double x);

}  // namespace qmeasure

#endif
