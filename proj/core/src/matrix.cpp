#include "qmeasure/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmeasure {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

HermitianOp::HermitianOp(const CMat& m, double herm_rel) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianOp: matrix must be square and nonempty");
  const double scale = std::max(1.0, m.norm());
  const double defect = (m - m.adjoint()).norm();
  if (defect > herm_rel * scale)
    throw std::invalid_argument("HermitianOp: matrix is not Hermitian within tolerance");
  mat_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(const CMat& m) {
  const Tolerances& tol = tolerances();
  HermitianOp h(m, 1e-10);  // states tolerate a little more asymmetry than observables
  mat_ = h.matrix();
  Eigen::SelfAdjointEigenSolver<CMat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  if (std::abs(mat_.trace().real() - 1.0) > 1e-9 || std::abs(mat_.trace().imag()) > 1e-9)
    throw std::invalid_argument("DensityMatrix: trace != 1");
}

DensityMatrix DensityMatrix::pure(const CVec& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  CVec v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
  CMat m = 0.5 * (identity(2) + x * pauli_x() + y * pauli_y() + z * pauli_z());
  return DensityMatrix(m);
}

Eigen::Vector3d DensityMatrix::bloch() const {
  if (dim() != 2) throw std::invalid_argument("bloch: qubit states only");
  Eigen::Vector3d r;
  r(0) = (mat_ * pauli_x()).trace().real();
  r(1) = (mat_ * pauli_y()).trace().real();
  r(2) = (mat_ * pauli_z()).trace().real();
  return r;
}

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: factor dims must be >= 1");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw std::invalid_argument("partial_trace: dimension mismatch");

  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  long keep_dim = 1, drop_dim = 1;
  for (int k : keep) {
    if (k < 0 || k >= nf) throw std::invalid_argument("partial_trace: bad keep index");
    kept[k] = true;
  }
  for (int f = 0; f < nf; ++f) (kept[f] ? keep_dim : drop_dim) *= dims[f];

  // strides of each factor in the row-major composite index
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> keep_f, drop_f;
  for (int f = 0; f < nf; ++f) (kept[f] ? keep_f : drop_f).push_back(f);

  auto compose = [&](const std::vector<int>& factors, long multi) {
    long idx = 0;
    for (int pos = static_cast<int>(factors.size()) - 1; pos >= 0; --pos) {
      const int f = factors[pos];
      idx += (multi % dims[f]) * stride[f];
      multi /= dims[f];
    }
    return idx;
  };

  CMat out = CMat::Zero(keep_dim, keep_dim);
  for (long i = 0; i < keep_dim; ++i)
    for (long j = 0; j < keep_dim; ++j) {
      cplx s = 0.0;
      for (long t = 0; t < drop_dim; ++t) {
        const long off = compose(drop_f, t);
        s += m(compose(keep_f, i) + off, compose(keep_f, j) + off);
      }
      out(i, j) = s;
    }
  return out;
}

EigH eig_hermitian(const HermitianOp& h) {
  if (static_cast<std::size_t>(h.dim()) > tolerances().eig_dim_cap)
    throw std::invalid_argument("eig_hermitian: dimension cap exceeded");
  Eigen::SelfAdjointEigenSolver<CMat> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: solver failed");
  const Eigen::Index n = h.dim();
  EigH out;
  out.values = RVec(n);
  out.vectors = CMat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {  // ascending -> descending
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

EigH eig_hermitian(const CMat& m) { return eig_hermitian(HermitianOp(m)); }

double op_norm(const CMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.norm() == 0.0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const CMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.norm() == 0.0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const CMat& a, const CMat& b) {
  return 0.5 * trace_norm(a - b);
}

CMat commutator(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

CMat dagger(const CMat& m) { return m.adjoint(); }

CMat positive_part(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian);
  const Eigen::Index n = hermitian.rows();
  CMat out = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > 0.0) out += ev * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return out;
}

double positive_part_trace(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < hermitian.rows(); ++i)
    if (es.eigenvalues()(i) > 0.0) s += es.eigenvalues()(i);
  return s;
}

CMat identity(int dim) { return CMat::Identity(dim, dim); }

CMat pauli_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat pauli_y() {
  CMat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMat pauli_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat sigma_plus() {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

CMat sigma_minus() {
  CMat m = CMat::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

CVec basis_vector(int dim, int k) {
  CVec v = CVec::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace qmeasure
