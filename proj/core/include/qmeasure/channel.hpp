#ifndef QMEASURE_CHANNEL_HPP
#define QMEASURE_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "qmeasure/matrix.hpp"

namespace qmeasure {

//=========================================================================
// CP unital maps in Heisenberg form
//=========================================================================

// Unital CP map T between matrix algebras, Heisenberg picture:
//
//   T : B(C^in_dim) -> B(C^out_dim),   T(B) = sum_i K_i^dag B K_i,
//
// where each Kraus operator K_i maps C^out_dim -> C^in_dim (an
// in_dim x out_dim matrix). in_dim is where the pointers live, out_dim is
// where the observables T(B) and the states live. Unitality
// sum_i K_i^dag K_i = 1 makes the Schroedinger dual
// T*(rho) = sum_i K_i rho K_i^dag trace preserving.
class KrausChannel {
 public:
  KrausChannel(std::vector<CMat> kraus_ops, double unital_tol = tolerances().unital);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<CMat>& kraus() const { return ops_; }

  // T(B), B on the in-space
  CMat apply(const CMat& B) const;
  // T*(rho), rho on the out-space
  CMat apply_dual(const CMat& rho) const;

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<CMat> ops_;
};

HermitianOp heisenberg_apply(const KrausChannel& T, const HermitianOp& B);
DensityMatrix schrodinger_apply(const KrausChannel& T, const DensityMatrix& rho);

// Heisenberg composition: (outer . inner)(B) = outer(inner(B)).
// Requires inner's codomain algebra == outer's domain algebra.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b);

// Conjugation channel T(B) = U^dag B U for unitary U.
KrausChannel unitary_channel(const CMat& u);

KrausChannel identity_channel(int dim);

// Unital CP map sampled by drawing complex Gaussian Kraus blocks and
// renormalizing with (sum K^dag K)^{-1/2}; deterministic in the seed.
KrausChannel random_channel(int in_dim, int out_dim, int kraus_count,
                            std::uint64_t seed);

// Choi matrix of the Schroedinger dual, C = sum_ij E_ij (x) T*(E_ij) with
// E_ij matrix units on the out-space. CP <=> C is PSD.
CMat choi_matrix(const KrausChannel& T);

// Rebuild a channel from a Choi matrix (eigendecomposition; eigenvalues
// below `rank_tol` are dropped, negative ones beyond the CP tolerance throw).
KrausChannel channel_from_choi(const CMat& choi, int in_dim, int out_dim,
                               double rank_tol = 1e-12);

// Qubit channel from the affine Bloch action r -> M r + c (Schroedinger
// picture). Throws if the map is not CP.
KrausChannel channel_from_bloch_map(const Eigen::Matrix3d& M,
                                    const Eigen::Vector3d& c = Eigen::Vector3d::Zero());

//=========================================================================
// Instruments and classical systems
//=========================================================================

// Classical system with k outcomes, embedded as the diagonal subalgebra of
// M_k. Outcome functions f become diagonal matrices diag(f(omega_1), ...).
struct ClassicalSystem {
  int outcomes;

  explicit ClassicalSystem(int k);
  CMat embed(const std::vector<double>& f) const;  // diagonal embedding
  CMat delta(int omega) const;                     // indicator of one outcome
};

// Measurement instrument on B(C^dim): outcome omega acts by the sub-CP map
// rho -> sum_i V_{omega,i} rho V_{omega,i}^dag. `branches[omega]` lists the
// V_{omega,i} (dim x dim). The associated Heisenberg channel
//   T : B(C^dim (x) C^k) -> B(C^dim),  T(X (x) f) = sum_omega f(omega) sum_i V^dag X V,
// has the system factor first, matching pointers of the form 1 (x) B.
KrausChannel instrument_channel(const std::vector<std::vector<CMat>>& branches);

// Vectors of the von Neumann measurement in the given orthonormal basis:
// branches are the rank-1 projectors onto basis columns.
KrausChannel von_neumann_channel(const CMat& basis);

// Restriction of T : B(H_sys (x) H_anc) -> B(H_sys) to the system factor,
// R(X) = T(X (x) 1).
KrausChannel restrict_to_system(const KrausChannel& T, int sys_dim, int anc_dim);

// Ancilla marginal Q(B) = T(1 (x) B).
KrausChannel restrict_to_ancilla(const KrausChannel& T, int sys_dim, int anc_dim);

//=========================================================================
// POVMs
//=========================================================================

struct FinitePovm {
  int dim = 0;
  std::vector<CMat> elements;   // positive, summing to identity
  std::vector<double> labels;   // outcome values

  void validate(double tol = tolerances().unital) const;
};

// Distill the POVM mu(omega) = T(spectral projector of B at omega) from a
// channel and a pointer with finite spectrum. Eigenvalues closer than the
// clustering tolerance share an outcome.
FinitePovm povm_from_channel(const KrausChannel& T, const HermitianOp& pointer);

// Spectral projectors of a Hermitian operator, clustered by eigenvalue.
struct SpectralDecomposition {
  std::vector<double> values;      // distinct, descending
  std::vector<CMat> projectors;
};
SpectralDecomposition spectral_projectors(const HermitianOp& h,
                                          double cluster_tol = tolerances().spectrum_cluster);

// Classical coding pair as Heisenberg channels on the diagonal algebra:
//   coding      C : diag(C^k) -> B(C^d),  C(f) = sum_w f(w) E_w   (the POVM),
//   preparation D : B(C^d) -> diag(C^k),  D(B) = sum_w tr(sigma_w B) |w><w|.
// The coding round trip is compose(C, D); its maximal disturbance is the
// coding imperfection (metrics.hpp).
KrausChannel povm_coding_channel(const FinitePovm& povm);
KrausChannel preparation_channel(const std::vector<DensityMatrix>& states);

// Apply a list of (not necessarily unital) Kraus operators as a sub-CP map
// in the Schroedinger picture: rho -> sum_i V_i rho V_i^dag.
CMat apply_kraus_dual(const std::vector<CMat>& ops, const CMat& rho);

}  // namespace qmeasure

#endif
