#include "qmeasure/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qmeasure/optimize.hpp"
#include "qmeasure/rng.hpp"

namespace qmeasure {

CMat sesquilinear_form(const KrausChannel& T, const CMat& X, const CMat& Y) {
  if (X.rows() != T.in_dim() || Y.rows() != T.in_dim())
    throw std::invalid_argument("sesquilinear_form: dimension mismatch");
  return T.apply(X.adjoint() * Y) - T.apply(X).adjoint() * T.apply(Y);
}

double max_added_variance(const KrausChannel& T, const HermitianOp& B) {
  const CMat& b = B.matrix();
  return op_norm(T.apply(b * b) - T.apply(b) * T.apply(b));
}

namespace {

// indicator of the eigenvalues of h selected by `mask` over `values`
CMat indicator(const SpectralDecomposition& sd, const std::vector<double>& values,
               unsigned mask, int dim, double cluster_tol) {
  CMat out = CMat::Zero(dim, dim);
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (!(mask & (1u << v))) continue;
    for (std::size_t w = 0; w < sd.values.size(); ++w)
      if (std::abs(sd.values[w] - values[v]) <= cluster_tol) out += sd.projectors[w];
  }
  return out;
}

}  // namespace

double measurement_infidelity(const KrausChannel& T, const HermitianOp& A,
                              const HermitianOp& B) {
  const Tolerances& tol = tolerances();
  SpectralDecomposition sa = spectral_projectors(A);
  SpectralDecomposition sb = spectral_projectors(B);

  // union of the two spectra, clustered
  std::vector<double> values;
  auto add = [&](double x) {
    for (double v : values)
      if (std::abs(v - x) <= tol.spectrum_cluster) return;
    values.push_back(x);
  };
  for (double v : sa.values) add(v);
  for (double v : sb.values) add(v);

  if (values.size() > tol.infidelity_subset_cap)
    throw std::invalid_argument("measurement_infidelity: joint spectrum too large for exact subset enumeration");

  const unsigned nsub = 1u << values.size();
  double best = 0.0;
  // S and its complement give the same norm, so half the range suffices
  for (unsigned mask = 1; mask < nsub / 2 + 1; ++mask) {
    CMat ia = indicator(sa, values, mask, A.dim(), tol.spectrum_cluster);
    CMat ib = indicator(sb, values, mask, B.dim(), tol.spectrum_cluster);
    best = std::max(best, op_norm(ia - T.apply(ib)));
  }
  return best;
}

double pure_state_disturbance(const KrausChannel& R, const CVec& psi) {
  CVec v = psi / psi.norm();
  CMat rho = v * v.adjoint();
  // trace distance of a traceless Hermitian difference = trace of its positive part
  return positive_part_trace(R.apply_dual(rho) - rho);
}

namespace {

CVec bloch_vectorize(double theta, double phi) {
  CVec v(2);
  v(0) = std::cos(0.5 * theta);
  v(1) = std::exp(cplx(0.0, phi)) * std::sin(0.5 * theta);
  return v;
}

// Monotone alternating ascent on g(psi, P) = <psi|(R(P) - P)|psi>:
// optimal P for fixed psi is the positive-part spectral projector of
// R*(psi psi^dag) - psi psi^dag; optimal psi for fixed P is the top
// eigenvector of R(P) - P.
double alternating_ascent(const KrausChannel& R, CVec psi, int max_iter = 60) {
  const int d = R.in_dim();
  double value = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    psi.normalize();
    CMat rho = psi * psi.adjoint();
    CMat diff = R.apply_dual(rho) - rho;
    Eigen::SelfAdjointEigenSolver<CMat> es(diff);
    CMat p = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i)
      if (es.eigenvalues()(i) > 0.0)
        p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    CMat g = R.apply(p) - p;
    Eigen::SelfAdjointEigenSolver<CMat> eg(g);
    const double next = eg.eigenvalues()(d - 1);
    psi = eg.eigenvectors().col(d - 1);
    if (next <= value + 1e-14) return std::max(value, next);
    value = next;
  }
  return value;
}

}  // namespace

double max_disturbance(const KrausChannel& R, const DisturbanceOptions& opts) {
  if (R.in_dim() != R.out_dim())
    throw std::invalid_argument("max_disturbance: channel must be square");
  const int d = R.in_dim();
  double best = 0.0;

  if (d == 2) {
    // Bloch grid with Nelder-Mead refinement
    auto f = [&](double theta, double phi) {
      return pure_state_disturbance(R, bloch_vectorize(theta, phi));
    };
    double bt = 0.0, bp = 0.0;
    for (int i = 0; i < opts.bloch_grid_theta; ++i)
      for (int j = 0; j < opts.bloch_grid_phi; ++j) {
        const double theta = 3.14159265358979323846 * (i + 0.5) / opts.bloch_grid_theta;
        const double phi = 6.28318530717958647692 * j / opts.bloch_grid_phi;
        const double v = f(theta, phi);
        if (v > best) {
          best = v;
          bt = theta;
          bp = phi;
        }
      }
    NelderMeadResult nm = nelder_mead(
        [&](const std::vector<double>& x) { return -f(x[0], x[1]); },
        {bt, bp}, 0.15, 1e-12, 400);
    best = std::max(best, -nm.value);
  }

  // seeded multistart alternating ascent (all dims; the only route for d > 2)
  Rng rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) {
    CVec psi(d);
    for (int i = 0; i < d; ++i) psi(i) = cplx(rng.normal(), rng.normal());
    best = std::max(best, alternating_ascent(R, psi));
  }
  // structured seeds: eigenvectors of the image of the maximally mixed state
  CMat m0 = R.apply_dual(identity(d) / d) - identity(d) / d;
  Eigen::SelfAdjointEigenSolver<CMat> es(m0);
  for (int i = 0; i < d; ++i)
    best = std::max(best, alternating_ascent(R, es.eigenvectors().col(i)));
  // pairwise superpositions of the computational basis (the witnesses used
  // in the Heisenberg-principle proof)
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      CVec psi = CVec::Zero(d);
      psi(i) = 1.0 / std::sqrt(2.0);
      psi(j) = 1.0 / std::sqrt(2.0);
      best = std::max(best, alternating_ascent(R, psi));
    }
  return best;
}

double distance_to_center(const HermitianOp& A) {
  EigH es = eig_hermitian(A);
  return 0.5 * (es.values(0) - es.values(es.values.size() - 1));
}

double coherence(const KrausChannel& R, const CVec& psi_x, const CVec& psi_y) {
  if (R.in_dim() != R.out_dim())
    throw std::invalid_argument("coherence: channel must be square");
  if (psi_x.size() != R.out_dim() || psi_y.size() != R.out_dim())
    throw std::invalid_argument("coherence: dimension mismatch");
  if (std::abs(psi_x.dot(psi_y)) > 1e-9)
    throw std::invalid_argument("coherence: vectors must be orthogonal");

  // <psi_x|R(P)|psi_y> = tr(P R*(|psi_y><psi_x|)); sup over 0<=P<=1 of
  // |tr(P Y)| = max_alpha tr( (Re e^{i alpha} Y)_+ ), exact in P.
  CMat y = R.apply_dual(psi_y * psi_x.adjoint());
  auto val = [&](double alpha) {
    CMat h = 0.5 * (std::exp(cplx(0.0, alpha)) * y +
                    std::exp(cplx(0.0, -alpha)) * y.adjoint());
    return positive_part_trace(h);
  };
  double best = 0.0, ba = 0.0;
  const int grid = 64;
  for (int i = 0; i < grid; ++i) {
    const double a = 6.28318530717958647692 * i / grid;
    const double v = val(a);
    if (v > best) {
      best = v;
      ba = a;
    }
  }
  const double w = 6.28318530717958647692 / grid;
  ScalarMin m = golden_section([&](double a) { return -val(a); }, ba - w, ba + w, 1e-12);
  return std::max(best, -m.value);
}

double coding_imperfection(const KrausChannel& coding, const KrausChannel& preparation) {
  if (coding.out_dim() != preparation.in_dim() || coding.in_dim() != preparation.out_dim())
    throw std::invalid_argument("coding_imperfection: maps do not compose");
  return max_disturbance(compose(coding, preparation));
}

}  // namespace qmeasure
