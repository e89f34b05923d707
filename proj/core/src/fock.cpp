#include "qmeasure/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeasure {

FockSpace FockSpace::for_amplitude(double z_abs) {
  return FockSpace(static_cast<int>(std::ceil(z_abs * z_abs + 10.0 * z_abs + 20.0)));
}

CMat annihilation(const FockSpace& space) {
  const int d = space.dim();
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMat number_operator(const FockSpace& space) {
  const int d = space.dim();
  CMat n = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = k;
  return n;
}

Quadratures quadratures(const FockSpace& space) {
  CMat a = annihilation(space);
  const double s = 1.0 / std::sqrt(2.0);
  CMat x = s * (a + a.adjoint());
  CMat p = s * (a - a.adjoint()) / cplx(0.0, 1.0);
  return Quadratures{HermitianOp(x), HermitianOp(p)};
}

CVec coherent_vector(const FockSpace& space, cplx amplitude, double tail_tol) {
  const int d = space.dim();
  CVec c(d);
  c(0) = std::exp(-0.5 * std::norm(amplitude));
  for (int k = 1; k < d; ++k) c(k) = c(k - 1) * amplitude / std::sqrt(static_cast<double>(k));
  const double mass = c.squaredNorm();
  if (1.0 - mass > tail_tol)
    throw std::invalid_argument("coherent_vector: truncation tail above tolerance");
  return c;
}

DensityMatrix thermal_state(const FockSpace& space, double p, double tail_tol) {
  if (p < 0.0 || p >= 1.0) throw std::invalid_argument("thermal_state: p in [0,1)");
  const int d = space.dim();
  CMat m = CMat::Zero(d, d);
  double mass = 0.0, w = 1.0 - p;
  for (int k = 0; k < d; ++k) {
    m(k, k) = w;
    mass += w;
    w *= p;
  }
  if (1.0 - mass > tail_tol)
    throw std::invalid_argument("thermal_state: truncation tail above tolerance");
  return DensityMatrix(m / mass);
}

namespace {

// One total-photon-number sector of the truncated two-mode beamsplitter.
// Sector N holds |k, N-k> for k in [max(0, N-n_max), min(N, n_max)].
struct Sector {
  int k_lo;
  CMat u;  // unitary block, indices relative to k_lo
};

Sector sector_unitary(double theta, int n_max, int N) {
  const int k_lo = std::max(0, N - n_max);
  const int k_hi = std::min(N, n_max);
  const int m = k_hi - k_lo + 1;
  // generator K = theta (a^dag (x) a - a (x) a^dag) is anti-Hermitian and
  // tridiagonal in k; exponentiate through H = -iK.
  CMat h = CMat::Zero(m, m);
  for (int k = k_lo; k < k_hi; ++k) {
    const double g = theta * std::sqrt(static_cast<double>(k + 1) * (N - k));
    h(k + 1 - k_lo, k - k_lo) = cplx(0.0, -g);
    h(k - k_lo, k + 1 - k_lo) = cplx(0.0, g);
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CMat phases = CMat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    phases(i, i) = std::exp(cplx(0.0, es.eigenvalues()(i)));
  Sector s;
  s.k_lo = k_lo;
  s.u = es.eigenvectors() * phases * es.eigenvectors().adjoint();
  return s;
}

}  // namespace

CVec beamsplitter_apply(double theta, const FockSpace& space, const CVec& v) {
  const int d = space.dim();
  if (v.size() != static_cast<Eigen::Index>(d) * d)
    throw std::invalid_argument("beamsplitter_apply: two-mode vector expected");
  CVec out = CVec::Zero(v.size());
  for (int N = 0; N <= 2 * space.n_max; ++N) {
    Sector s = sector_unitary(theta, space.n_max, N);
    const int m = static_cast<int>(s.u.rows());
    CVec block(m);
    for (int i = 0; i < m; ++i) {
      const int k = s.k_lo + i;
      block(i) = v(k * d + (N - k));
    }
    block = s.u * block;
    for (int i = 0; i < m; ++i) {
      const int k = s.k_lo + i;
      out(k * d + (N - k)) += block(i);
    }
  }
  return out;
}

namespace {

// isometry W|m> = U(|m> (x) |0>); column m lives entirely in sector m
CMat beamsplitter_isometry(double theta, const FockSpace& space) {
  const int d = space.dim();
  CMat w = CMat::Zero(static_cast<Eigen::Index>(d) * d, d);
  for (int m = 0; m < d; ++m) {
    Sector s = sector_unitary(theta, space.n_max, m);
    CVec in = CVec::Zero(s.u.rows());
    in(m - s.k_lo) = 1.0;
    CVec outb = s.u * in;
    for (int i = 0; i < outb.size(); ++i) {
      const int k = s.k_lo + i;
      w(static_cast<Eigen::Index>(k) * d + (m - k), m) = outb(i);
    }
  }
  return w;
}

}  // namespace

KrausChannel beamsplitter_channel(double theta, const FockSpace& space) {
  if (theta <= 0.0 || theta >= 1.5707963267948966)
    throw std::invalid_argument("beamsplitter_channel: theta in (0, pi/2)");
  return KrausChannel({beamsplitter_isometry(theta, space)});
}

CMat beamsplitter_heisenberg(double theta, const FockSpace& space,
                             const CMat& f_first_mode, const CMat& g_second_mode) {
  const int d = space.dim();
  if (f_first_mode.rows() != d || g_second_mode.rows() != d)
    throw std::invalid_argument("beamsplitter_heisenberg: single-mode operator expected");
  const CMat w = beamsplitter_isometry(theta, space);
  // apply (f (x) g) columnwise through the reshape W_j ~ M_j (k,l)
  CMat fw(w.rows(), d);
  for (int j = 0; j < d; ++j) {
    Eigen::Map<const CMat> mj(w.col(j).data(), d, d);  // (l, k) layout: col-major
    CMat applied = g_second_mode * mj * f_first_mode.transpose();
    fw.col(j) = Eigen::Map<const CVec>(applied.data(), applied.size());
  }
  return w.adjoint() * fw;
}

JointQuality joint_quality(double theta, const FockSpace& space) {
  if (theta <= 0.0 || theta >= 1.5707963267948966)
    throw std::invalid_argument("joint_quality: theta in (0, pi/2)");
  const int d = space.dim();
  Quadratures q = quadratures(space);
  const CMat id = identity(d);
  const double c = std::cos(theta), s = std::sin(theta);

  const CMat x1 = q.x.matrix() / c;
  const CMat p2 = -q.p.matrix() / s;

  CMat tb = beamsplitter_heisenberg(theta, space, x1, id);
  CMat tb2 = beamsplitter_heisenberg(theta, space, x1 * x1, id);
  CMat tbt = beamsplitter_heisenberg(theta, space, id, p2);
  CMat tbt2 = beamsplitter_heisenberg(theta, space, id, p2 * p2);

  const int keep = space.n_max / 2 + 1;  // protected levels <= n_max/2
  CMat eb = (tb2 - tb * tb).block(0, 0, keep, keep);
  CMat ebt = (tbt2 - tbt * tbt).block(0, 0, keep, keep);

  JointQuality jq;
  jq.sigma_b = std::sqrt(op_norm(eb));
  jq.sigma_b_tilde = std::sqrt(op_norm(ebt));
  jq.product = jq.sigma_b * jq.sigma_b_tilde;
  return jq;
}

}  // namespace qmeasure
