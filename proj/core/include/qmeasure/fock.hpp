#ifndef QMEASURE_FOCK_HPP
#define QMEASURE_FOCK_HPP

#include "qmeasure/channel.hpp"
#include "qmeasure/matrix.hpp"

namespace qmeasure {

// Truncated single-mode Fock space with basis |0> ... |n_max>.
struct FockSpace {
  int n_max;

  explicit FockSpace(int n) : n_max(n) {
    if (n < 1) throw std::invalid_argument("FockSpace: n_max >= 1");
  }
  int dim() const { return n_max + 1; }

  // truncation level so a coherent amplitude |z| keeps tail mass < 1e-12
  static FockSpace for_amplitude(double z_abs);
};

CMat annihilation(const FockSpace& space);           // a|n> = sqrt(n)|n-1>
CMat number_operator(const FockSpace& space);

struct Quadratures {
  HermitianOp x;  // (a + a^dag)/sqrt(2)
  HermitianOp p;  // (a - a^dag)/(i sqrt(2))
};
Quadratures quadratures(const FockSpace& space);

// Coherent vector; throws if the truncated tail mass exceeds the tolerance.
CVec coherent_vector(const FockSpace& space, cplx amplitude,
                     double tail_tol = tolerances().trunc);

// Thermal state (1-p) sum p^k |k><k|, renormalized on the truncation.
DensityMatrix thermal_state(const FockSpace& space, double p,
                            double tail_tol = tolerances().trunc);

// Beamsplitter unitary U = exp(theta (a^dag (x) a - a (x) a^dag)) on the
// truncated two-mode space, applied to a two-mode vector. The generator
// conserves total photon number, so the exponential is taken sector by
// sector (exactly the dense matrix exponential of the truncated generator).
CVec beamsplitter_apply(double theta, const FockSpace& space, const CVec& v);

// Heisenberg channel T(Y) = (id (x) vacuum)(U^dag Y U) of the beamsplitter
// with the second input in the vacuum: a single isometry W|m> = U(|m> (x) |0>).
KrausChannel beamsplitter_channel(double theta, const FockSpace& space);

// Maximal added variances of the quadrature pointers B = x (x) 1 / cos(theta)
// and Btilde = -(1 (x) p) / sin(theta), with operator norms restricted to the
// protected subspace (levels <= n_max/2) to keep the truncation edge out.
struct JointQuality {
  double sigma_b;        // sqrt of ||(B,B)|| on the protected block
  double sigma_b_tilde;
  double product;        // sigma_b * sigma_b_tilde
};
JointQuality joint_quality(double theta, const FockSpace& space);

// T(f(x) (x) g(p)) evaluated through the beamsplitter isometry without
// forming two-mode matrices; f and g act on single modes.
CMat beamsplitter_heisenberg(double theta, const FockSpace& space,
                             const CMat& f_first_mode, const CMat& g_second_mode);

}  // namespace qmeasure

#endif
