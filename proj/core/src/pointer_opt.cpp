#include "qmeasure/pointer_opt.hpp"

#include <cmath>
#include <stdexcept>

#include "qmeasure/optimize.hpp"
#include "qmeasure/quadrature.hpp"
#include "qmeasure/special.hpp"

namespace qmeasure {
namespace pointer {

double beta_of_t(double t) {
  if (t <= 0.0) return 1.0;
  return std::sqrt(1.0 - std::exp(-t));
}

double PointerSpec::evaluate(double y) const {
  switch (kind) {
    case PointerKind::rational:
      return (c1 * y + c2) / (y * y + eps) + c3;
    case PointerKind::linear:
      return d5 * y;
    case PointerKind::quadratic:
      return d4 * y * y + d5 * y + d6;
  }
  return 0.0;
}

std::string PointerSpec::describe() const {
  switch (kind) {
    case PointerKind::rational:
      return "(" + std::to_string(c1) + "*y + " + std::to_string(c2) + ")/(y^2 + " +
             std::to_string(eps) + ") + " + std::to_string(c3);
    case PointerKind::linear:
      return std::to_string(d5) + "*y";
    case PointerKind::quadratic:
      return std::to_string(d4) + "*y^2 + " + std::to_string(d5) + "*y + " +
             std::to_string(d6);
  }
  return "";
}

DensityWeights density_p(double y, double t) {
  if (t == 0.0) throw std::invalid_argument("density_p: t must be positive (or <0 for the limit)");
  const double b = beta_of_t(t);
  const double g = gauss_pdf(y);
  DensityWeights w;
  w.unit = g;
  w.sx = g * b * y;
  w.spm = g * b * b * (y * y - 1.0);
  return w;
}

double density_q(double y, double t, double px, double pz) {
  DensityWeights w = density_p(y, t);
  return w.unit + w.sx * px + w.spm * 0.5 * (pz + 1.0);
}

NaiveQualities naive_qualities(double t) {
  if (t <= 0.0) throw std::invalid_argument("naive_qualities: t > 0 required");
  const double e = std::exp(-0.5 * t);
  const double den = 2.0 - 2.0 * e;
  NaiveQualities q;
  q.sigma2 = t / (den * den) + 1.0;
  const double f = e - 1.0;
  q.sigma2_tilde = t * t / (8.0 * f * f * f * f) + (2.0 * t - 4.0 * f * f) / (f * f);
  return q;
}

NaiveMinima naive_minima() {
  ScalarMin ms = minimize_scalar_logspaced([](double t) { return naive_qualities(t).sigma2; },
                                           0.1, 30.0, 200, 1e-10);
  ScalarMin mt = minimize_scalar_logspaced(
      [](double t) { return naive_qualities(t).sigma2_tilde; }, 0.1, 30.0, 200, 1e-10);
  return NaiveMinima{ms.x, ms.value, mt.x, mt.value};
}

SimpleQualities simple_pointer_qualities(double t) {
  const double b = beta_of_t(t);
  SimpleQualities s;
  s.sigma2_linear = 1.0 + 1.0 / (b * b);
  // unbiased quadratic sigma_z pointer: d4 = beta^{-2}, d6 = -(1 + beta^{-2})
  const double d4 = 1.0 / (b * b);
  const double d6 = -(1.0 + d4);
  const double a = 3.0 * d4 * d4 + 2.0 * d4 * d6 + d6 * d6;
  const double bb = b * b * (12.0 * d4 * d4 + 4.0 * d4 * d6);
  s.sigma2_quad = std::max(a + bb - 1.0, a - 1.0);
  return s;
}

QualityPair d1_d2(Target target, double param, double t) {
  if (param <= 0.0) throw std::invalid_argument("d1_d2: family parameter must be > 0");
  const double b = beta_of_t(t);
  const double I = I_eps(param);
  const double J = J_eps(param);
  QualityPair q;
  if (target == Target::sigma_x) {
    const double den = kSqrt2Pi - param * I;
    if (std::abs(den) < 1e-12)
      throw std::invalid_argument("d1_d2: singular unbiasedness denominator");
    const double c1 = kSqrt2Pi / (b * den);
    q.d2 = c1 * c1 / kSqrt2Pi * (I - param * J) - 1.0;
    q.d1 = c1 * c1 * b * b / kSqrt2Pi *
               (kSqrt2Pi - (1.0 + 2.0 * param) * I + param * (1.0 + param) * J) +
           q.d2;
  } else {
    const double den = kSqrt2Pi - (1.0 + param) * I;
    if (std::abs(den) < 1e-12)
      throw std::invalid_argument("d1_d2: singular unbiasedness denominator");
    const double d2c = 2.0 * kSqrt2Pi / (b * b * den);
    const double d3c = -(kSqrt2Pi + I * d2c) / kSqrt2Pi;
    const double a = (d2c * d2c * J + 2.0 * d2c * d3c * I) / kSqrt2Pi + d3c * d3c;
    const double bb = b * b *
                      (2.0 * d2c * d3c * (kSqrt2Pi - (1.0 + param) * I) +
                       d2c * d2c * (I - (1.0 + param) * J)) /
                      kSqrt2Pi;
    q.d1 = a + bb - 1.0;
    q.d2 = a - 1.0;
  }
  q.sigma = std::sqrt(std::max(q.d1, q.d2));
  return q;
}

PointerSpec rational_spec(Target target, double param, double t) {
  const double b = beta_of_t(t);
  const double I = I_eps(param);
  PointerSpec s;
  s.kind = PointerKind::rational;
  s.target = target;
  s.t = t;
  s.eps = param;
  if (target == Target::sigma_x) {
    s.c1 = kSqrt2Pi / (b * (kSqrt2Pi - param * I));
    s.c2 = s.c3 = 0.0;
  } else {
    s.c1 = 0.0;
    s.c2 = 2.0 * kSqrt2Pi / (b * b * (kSqrt2Pi - (1.0 + param) * I));
    s.c3 = -(kSqrt2Pi + I * s.c2) / kSqrt2Pi;
  }
  return s;
}

QualityPair quality_from_quadrature(const PointerSpec& spec, double* off_diag) {
  const double b = beta_of_t(spec.t);
  auto h = [&](double y) { return spec.evaluate(y); };
  auto moment = [&](auto&& f) {
    return integrate([&](double y) { return f(y) * gauss_pdf(y); }, -10.0, 10.0, 1e-11).value;
  };
  // int h p and int h^2 p in the (1, sigma_x, sigma_+sigma_-) coordinates
  const double m_u = moment([&](double y) { return h(y); });
  const double m_x = b * moment([&](double y) { return h(y) * y; });
  const double m_s = b * b * moment([&](double y) { return h(y) * (y * y - 1.0); });
  const double a_u = moment([&](double y) { return h(y) * h(y); });
  const double a_x = b * moment([&](double y) { return h(y) * h(y) * y; });
  const double a_s = b * b * moment([&](double y) { return h(y) * h(y) * (y * y - 1.0); });

  // M = u 1 + v sigma_x + w sigma_+sigma_- = [[u + w, v], [v, u]]
  Eigen::Matrix2d m1, m2;
  m1 << m_u + m_s, m_x, m_x, m_u;
  m2 << a_u + a_s, a_x, a_x, a_u;
  Eigen::Matrix2d e = m2 - m1 * m1;
  QualityPair q;
  q.d1 = e(0, 0);
  q.d2 = e(1, 1);
  q.sigma = std::sqrt(std::max(q.d1, q.d2));
  if (off_diag) *off_diag = std::abs(e(0, 1));
  return q;
}

OptimizedPointer optimize_pointer(Target target, double t) {
  auto objective = [&](double param) {
    QualityPair q = d1_d2(target, param, t);
    return std::max(q.d1, q.d2);
  };
  ScalarMin m = minimize_scalar_logspaced(objective, 0.05, 10.0, 200, 1e-8);
  if (!m.bracketed)
    throw std::runtime_error("optimize_pointer: pre-scan failed to bracket a minimum");
  OptimizedPointer out;
  out.param = m.x;
  out.spec = rational_spec(target, m.x, t);
  out.quality = d1_d2(target, m.x, t);
  return out;
}

double unbiasedness_residual(const PointerSpec& spec) {
  const double b = beta_of_t(spec.t);
  auto h = [&](double y) { return spec.evaluate(y); };
  auto moment = [&](auto&& f) {
    return integrate([&](double y) { return f(y) * gauss_pdf(y); }, -10.0, 10.0, 1e-11).value;
  };
  const double m_u = moment([&](double y) { return h(y); });
  const double m_x = b * moment([&](double y) { return h(y) * y; });
  const double m_s = b * b * moment([&](double y) { return h(y) * (y * y - 1.0); });
  Eigen::Matrix2d m1, target;
  m1 << m_u + m_s, m_x, m_x, m_u;
  if (spec.target == Target::sigma_x)
    target << 0, 1, 1, 0;
  else
    target << 1, 0, 0, -1;
  Eigen::Matrix2d r = m1 - target;  // symmetric
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(r);
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1)));
}

Support output_support(const PointerSpec& spec) {
  if (spec.kind != PointerKind::rational)
    throw std::invalid_argument("output_support: rational pointers only");
  if (spec.target == Target::sigma_x) {
    const double m = spec.c1 / (2.0 * std::sqrt(spec.eps));
    return Support{-m, m};
  }
  return Support{spec.c3 + spec.c2 / spec.eps, spec.c3};
}

std::vector<DensitySample> output_density(const PointerSpec& spec, double px,
                                          double pz, const std::vector<double>& grid) {
  if (spec.kind != PointerKind::rational)
    throw std::invalid_argument("output_density: rational pointers only");
  Support sup = output_support(spec);
  const double width = sup.hi - sup.lo;
  std::vector<DensitySample> out;
  out.reserve(grid.size());

  for (double x0 : grid) {
    double x = x0;
    double r = 0.0;
    if (x > sup.lo && x < sup.hi) {
      if (spec.target == Target::sigma_x) {
        // nudge off the fold points h'(y) = 0 at the support edges
        const double edge = 1e-12 * std::max(1.0, width);
        x = std::min(std::max(x, sup.lo + edge), sup.hi - edge);
        if (std::abs(x) < 1e-300) {
          // only the y -> 0 branch contributes at x = 0
          r = density_q(0.0, spec.t, px, pz) * spec.eps / spec.c1;
        } else {
          const double disc = spec.c1 * spec.c1 - 4.0 * x * x * spec.eps;
          const double sq = std::sqrt(std::max(0.0, disc));
          for (double y : {(spec.c1 + sq) / (2.0 * x), (spec.c1 - sq) / (2.0 * x)}) {
            const double y2 = y * y;
            const double dh = spec.c1 * std::abs(y2 - spec.eps) / ((y2 + spec.eps) * (y2 + spec.eps));
            r += density_q(y, spec.t, px, pz) / dh;
          }
        }
      } else {
        const double edge = 1e-12 * std::max(1.0, width);
        x = std::min(std::max(x, sup.lo + edge), sup.hi - edge);
        const double u = ((x - spec.c3) * spec.eps - spec.c2) / (spec.c3 - x);
        if (u > 0.0) {
          const double y = std::sqrt(u);
          for (double yy : {y, -y}) {
            const double dh = 2.0 * std::abs(spec.c2) * std::abs(yy) /
                              ((yy * yy + spec.eps) * (yy * yy + spec.eps));
            r += density_q(yy, spec.t, px, pz) / dh;
          }
        }
      }
    }
    out.push_back(DensitySample{x0, r});
  }
  return out;
}

}  // namespace pointer
}  // namespace qmeasure
