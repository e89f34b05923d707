#include "qmeasure/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "qmeasure/rng.hpp"

namespace qmeasure {

KrausChannel::KrausChannel(std::vector<CMat> kraus_ops, double unital_tol)
    : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  in_dim_ = static_cast<int>(ops_[0].rows());
  out_dim_ = static_cast<int>(ops_[0].cols());
  CMat s = CMat::Zero(out_dim_, out_dim_);
  for (const CMat& k : ops_) {
    if (k.rows() != in_dim_ || k.cols() != out_dim_)
      throw std::invalid_argument("KrausChannel: inconsistent Kraus shapes");
    s += k.adjoint() * k;
  }
  if (op_norm(s - identity(out_dim_)) > unital_tol)
    throw std::invalid_argument("KrausChannel: not unital (sum K^dag K != 1)");
}

CMat KrausChannel::apply(const CMat& B) const {
  if (B.rows() != in_dim_ || B.cols() != in_dim_)
    throw std::invalid_argument("KrausChannel::apply: dimension mismatch");
  CMat out = CMat::Zero(out_dim_, out_dim_);
  for (const CMat& k : ops_) out += k.adjoint() * B * k;
  return out;
}

CMat KrausChannel::apply_dual(const CMat& rho) const {
  if (rho.rows() != out_dim_ || rho.cols() != out_dim_)
    throw std::invalid_argument("KrausChannel::apply_dual: dimension mismatch");
  CMat out = CMat::Zero(in_dim_, in_dim_);
  for (const CMat& k : ops_) out += k * rho * k.adjoint();
  return out;
}

HermitianOp heisenberg_apply(const KrausChannel& T, const HermitianOp& B) {
  return HermitianOp(T.apply(B.matrix()), 1e-10);
}

DensityMatrix schrodinger_apply(const KrausChannel& T, const DensityMatrix& rho) {
  return DensityMatrix(T.apply_dual(rho.matrix()));
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (outer.in_dim() != inner.out_dim())
    throw std::invalid_argument("compose: outer.in_dim must equal inner.out_dim");
  std::vector<CMat> ops;
  ops.reserve(outer.kraus().size() * inner.kraus().size());
  for (const CMat& ki : inner.kraus())
    for (const CMat& ko : outer.kraus()) ops.push_back(ki * ko);
  return KrausChannel(std::move(ops));
}

KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMat> ops;
  ops.reserve(a.kraus().size() * b.kraus().size());
  for (const CMat& ka : a.kraus())
    for (const CMat& kb : b.kraus()) ops.push_back(tensor(ka, kb));
  return KrausChannel(std::move(ops));
}

KrausChannel unitary_channel(const CMat& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary_channel: not square");
  if (op_norm(u * u.adjoint() - identity(static_cast<int>(u.rows()))) > 1e-10)
    throw std::invalid_argument("unitary_channel: matrix is not unitary");
  return KrausChannel({u});
}

KrausChannel identity_channel(int dim) { return KrausChannel({identity(dim)}); }

KrausChannel random_channel(int in_dim, int out_dim, int kraus_count,
                            std::uint64_t seed) {
  if (in_dim < 1 || out_dim < 1 || kraus_count < 1)
    throw std::invalid_argument("random_channel: counts must be >= 1");
  if (static_cast<long>(in_dim) * kraus_count < out_dim)
    throw std::invalid_argument("random_channel: kraus_count * in_dim < out_dim cannot be unital");
  Rng rng(seed);
  std::vector<CMat> ops(kraus_count);
  CMat s = CMat::Zero(out_dim, out_dim);
  for (CMat& k : ops) {
    k = CMat(in_dim, out_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int j = 0; j < out_dim; ++j) k(i, j) = cplx(rng.normal(), rng.normal());
    s += k.adjoint() * k;
  }
  // s^{-1/2} through the Hermitian eigendecomposition
  Eigen::SelfAdjointEigenSolver<CMat> es(s);
  CMat isqrt = CMat::Zero(out_dim, out_dim);
  for (int i = 0; i < out_dim; ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= 0.0) throw std::runtime_error("random_channel: singular normalization");
    isqrt += (1.0 / std::sqrt(ev)) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  for (CMat& k : ops) k = k * isqrt;
  return KrausChannel(std::move(ops));
}

CMat choi_matrix(const KrausChannel& T) {
  const int d_out = T.out_dim();
  const int d_in = T.in_dim();
  CMat c = CMat::Zero(d_out * d_in, d_out * d_in);
  for (const CMat& k : T.kraus()) {
    CVec v(d_out * d_in);
    for (int i = 0; i < d_out; ++i)
      for (int b = 0; b < d_in; ++b) v(i * d_in + b) = k(b, i);
    c += v * v.adjoint();
  }
  return c;
}

KrausChannel channel_from_choi(const CMat& choi, int in_dim, int out_dim,
                               double rank_tol) {
  if (choi.rows() != static_cast<Eigen::Index>(in_dim) * out_dim)
    throw std::invalid_argument("channel_from_choi: dimension mismatch");
  EigH es = eig_hermitian(HermitianOp(choi, 1e-9));
  const double scale = std::max(1.0, std::abs(es.values(0)));
  std::vector<CMat> ops;
  for (int a = 0; a < es.values.size(); ++a) {
    const double ev = es.values(a);
    if (ev < -tolerances().choi * scale)
      throw std::invalid_argument("channel_from_choi: Choi matrix is not PSD");
    if (ev <= rank_tol * scale) continue;
    CMat k(in_dim, out_dim);
    for (int i = 0; i < out_dim; ++i)
      for (int b = 0; b < in_dim; ++b) k(b, i) = std::sqrt(ev) * es.vectors(i * in_dim + b, a);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel channel_from_bloch_map(const Eigen::Matrix3d& M, const Eigen::Vector3d& c) {
  const CMat sig[3] = {pauli_x(), pauli_y(), pauli_z()};
  // Choi of the Schroedinger action rho -> (tr rho)(1 + c.sigma)/2 + (M r).sigma/2
  CMat choi = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMat e = CMat::Zero(2, 2);
      e(i, j) = 1.0;
      cplx r[3];
      for (int k = 0; k < 3; ++k) r[k] = (sig[k] * e).trace();
      CMat te = 0.5 * e.trace() * identity(2);
      for (int k = 0; k < 3; ++k) {
        cplx coef = 0.5 * (M(k, 0) * r[0] + M(k, 1) * r[1] + M(k, 2) * r[2]) +
                    0.5 * e.trace() * c(k);
        te += coef * sig[k];
      }
      CMat eij = CMat::Zero(2, 2);
      eij(i, j) = 1.0;
      choi += tensor(eij, te);
    }
  return channel_from_choi(choi, 2, 2);
}

ClassicalSystem::ClassicalSystem(int k) : outcomes(k) {
  if (k < 1) throw std::invalid_argument("ClassicalSystem: need k >= 1");
}

CMat ClassicalSystem::embed(const std::vector<double>& f) const {
  if (static_cast<int>(f.size()) != outcomes)
    throw std::invalid_argument("ClassicalSystem::embed: wrong outcome count");
  CMat m = CMat::Zero(outcomes, outcomes);
  for (int i = 0; i < outcomes; ++i) m(i, i) = f[i];
  return m;
}

CMat ClassicalSystem::delta(int omega) const {
  CMat m = CMat::Zero(outcomes, outcomes);
  m(omega, omega) = 1.0;
  return m;
}

KrausChannel instrument_channel(const std::vector<std::vector<CMat>>& branches) {
  if (branches.empty()) throw std::invalid_argument("instrument_channel: no branches");
  const int k = static_cast<int>(branches.size());
  int d = 0;
  for (const auto& br : branches)
    for (const CMat& v : br) d = static_cast<int>(v.rows());
  if (d == 0) throw std::invalid_argument("instrument_channel: empty instrument");
  std::vector<CMat> ops;
  for (int w = 0; w < k; ++w) {
    CMat e = CMat::Zero(k, 1);
    e(w, 0) = 1.0;
    for (const CMat& v : branches[w]) {
      if (v.rows() != d || v.cols() != d)
        throw std::invalid_argument("instrument_channel: branch ops must be d x d");
      ops.push_back(tensor(v, e));  // system factor first
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel von_neumann_channel(const CMat& basis) {
  const int d = static_cast<int>(basis.rows());
  std::vector<std::vector<CMat>> branches(d);
  for (int i = 0; i < d; ++i) {
    CVec b = basis.col(i);
    branches[i] = {CMat(b * b.adjoint())};
  }
  return instrument_channel(branches);
}

KrausChannel restrict_to_system(const KrausChannel& T, int sys_dim, int anc_dim) {
  if (T.in_dim() != sys_dim * anc_dim)
    throw std::invalid_argument("restrict_to_system: dimension mismatch");
  std::vector<CMat> ops;
  for (const CMat& k : T.kraus())
    for (int m = 0; m < anc_dim; ++m) {
      CMat l(sys_dim, T.out_dim());
      for (int s = 0; s < sys_dim; ++s) l.row(s) = k.row(s * anc_dim + m);
      ops.push_back(std::move(l));
    }
  return KrausChannel(std::move(ops));
}

KrausChannel restrict_to_ancilla(const KrausChannel& T, int sys_dim, int anc_dim) {
  if (T.in_dim() != sys_dim * anc_dim)
    throw std::invalid_argument("restrict_to_ancilla: dimension mismatch");
  std::vector<CMat> ops;
  for (const CMat& k : T.kraus())
    for (int s = 0; s < sys_dim; ++s) {
      CMat l(anc_dim, T.out_dim());
      for (int m = 0; m < anc_dim; ++m) l.row(m) = k.row(s * anc_dim + m);
      ops.push_back(std::move(l));
    }
  return KrausChannel(std::move(ops));
}

void FinitePovm::validate(double tol) const {
  CMat s = CMat::Zero(dim, dim);
  for (const CMat& e : elements) {
    Eigen::SelfAdjointEigenSolver<CMat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tolerances().psd)
      throw std::invalid_argument("FinitePovm: element not positive");
    s += e;
  }
  if (op_norm(s - identity(dim)) > tol)
    throw std::invalid_argument("FinitePovm: elements do not sum to identity");
}

SpectralDecomposition spectral_projectors(const HermitianOp& h, double cluster_tol) {
  EigH es = eig_hermitian(h);
  SpectralDecomposition sd;
  const int n = h.dim();
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && std::abs(es.values(j + 1) - es.values(i)) <= cluster_tol) ++j;
    CMat p = CMat::Zero(n, n);
    double mean = 0.0;
    for (int k = i; k <= j; ++k) {
      p += es.vectors.col(k) * es.vectors.col(k).adjoint();
      mean += es.values(k);
    }
    sd.values.push_back(mean / (j - i + 1));
    sd.projectors.push_back(std::move(p));
    i = j + 1;
  }
  return sd;
}

FinitePovm povm_from_channel(const KrausChannel& T, const HermitianOp& pointer) {
  SpectralDecomposition sd = spectral_projectors(pointer);
  FinitePovm povm;
  povm.dim = T.out_dim();
  for (std::size_t w = 0; w < sd.values.size(); ++w) {
    povm.elements.push_back(T.apply(sd.projectors[w]));
    povm.labels.push_back(sd.values[w]);
  }
  povm.validate();
  return povm;
}

KrausChannel povm_coding_channel(const FinitePovm& povm) {
  const int d = povm.dim;
  const int k = static_cast<int>(povm.elements.size());
  std::vector<CMat> ops;
  for (int w = 0; w < k; ++w) {
    EigH es = eig_hermitian(HermitianOp(povm.elements[w], 1e-9));
    for (int r = 0; r < d; ++r) {
      const double ev = es.values(r);
      if (ev <= 1e-14) continue;
      CMat op = CMat::Zero(k, d);
      op.row(w) = std::sqrt(ev) * es.vectors.col(r).adjoint();
      ops.push_back(std::move(op));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel preparation_channel(const std::vector<DensityMatrix>& states) {
  if (states.empty()) throw std::invalid_argument("preparation_channel: no states");
  const int d = states[0].dim();
  const int k = static_cast<int>(states.size());
  std::vector<CMat> ops;
  for (int w = 0; w < k; ++w) {
    EigH es = eig_hermitian(HermitianOp(states[w].matrix(), 1e-9));
    for (int r = 0; r < d; ++r) {
      const double ev = es.values(r);
      if (ev <= 1e-14) continue;
      CMat op = CMat::Zero(d, k);
      op.col(w) = std::sqrt(ev) * es.vectors.col(r);
      ops.push_back(std::move(op));
    }
  }
  return KrausChannel(std::move(ops));
}

CMat apply_kraus_dual(const std::vector<CMat>& ops, const CMat& rho) {
  if (ops.empty()) throw std::invalid_argument("apply_kraus_dual: no operators");
  CMat out = CMat::Zero(ops[0].rows(), ops[0].rows());
  for (const CMat& v : ops) out += v * rho * v.adjoint();
  return out;
}

}  // namespace qmeasure
