#ifndef QMEASURE_BOUNDS_HPP
#define QMEASURE_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmeasure/channel.hpp"
#include "qmeasure/matrix.hpp"
#include "qmeasure/metrics.hpp"

namespace qmeasure {

// One audited inequality. `gap` is the slack of the inequality, >= 0 when it
// holds exactly; `satisfied` allows the slack to dip to -tol. Raw lhs/rhs are
// kept so forbidden-region curves can be plotted from audit output.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double gap = 0.0;
  std::string note;
};

// Joint measurement: Sigma_B Sigma_Btilde >= ||[T(B), T(Btilde)]|| / 2 for
// commuting pointers B, Btilde.
BoundCheck joint_measurement_check(const KrausChannel& T, const HermitianOp& B,
                                   const HermitianOp& B_tilde, double tol = 1e-9);

// Heisenberg principle for unbiased transfer: with T acting on system (x)
// ancilla, pointer 1 (x) B on the ancilla, A = T(1 (x) B), R the system
// restriction,
//   Sigma >= d(A, Z) (1/2 - Delta) / sqrt(Delta (1 - Delta)).
// Delta = 0 is reported as rhs = +infinity; the claim is then violated only
// by a nontrivial transfer (d(A, Z) > 0).
BoundCheck heisenberg_check(const KrausChannel& T, int sys_dim, int anc_dim,
                            const HermitianOp& B_ancilla, double tol = 1e-9);

// Information-disturbance trade-off: (1/2 - delta)^2 + (1/2 - Delta)^2 <= 1/4
// for delta, Delta in [0, 1/2]; out-of-range inputs void the hypothesis.
BoundCheck info_disturbance_check(double delta, double disturbance, double tol = 1e-9);

// Classical coding floors: Cauchy-Schwarz route (3 - sqrt 5)/4 and the
// no-cloning route (d - 1)/(d + 1).
struct CodingBounds {
  double cs_bound;
  double clone_bound;
};
CodingBounds coding_bounds(int dim);

// Collapse bound for unbiased transfer: remaining coherence between two
// eigenvectors of A = T(1 (x) B) with eigenvalues x != y is at most
// (Sigma/|x-y|) / sqrt(1 + 4 (Sigma/|x-y|)^2).
BoundCheck collapse_check(const KrausChannel& T, int sys_dim, int anc_dim,
                          const HermitianOp& B_ancilla, const CVec& psi_x,
                          const CVec& psi_y, double x, double y, double tol = 1e-9);

// Collapse bound for nondestructive transfer: coherence <= sqrt(delta (1 - delta)).
// Requires R* to fix the eigenbasis projectors within `nondestructive_tol`.
BoundCheck nondestructive_collapse_check(const KrausChannel& T, int sys_dim,
                                         int anc_dim, const CVec& psi_i,
                                         const CVec& psi_j, double delta,
                                         double tol = 1e-9,
                                         double nondestructive_tol = 1e-9);

// Decoherence estimate for unitary information transfer: measured coherence
// |<theta_0| A theta_1>| against (delta_comm ||B|| + sigma_0 + sigma_1) /
// |b_0 - b_1| * ||A||, with delta_comm = ||[A,B]|| / (||A|| ||B||) computed.
struct DecoherenceEstimate {
  double measured = 0.0;
  double bound = 0.0;
  double delta_comm = 0.0;
  double b0 = 0.0, b1 = 0.0;
  double sigma0 = 0.0, sigma1 = 0.0;
  bool satisfied = false;
};
DecoherenceEstimate decoherence_estimate(const CVec& theta0, const CVec& theta1,
                                         const HermitianOp& A, const HermitianOp& B,
                                         double tol = 1e-9);

// One-parameter family attaining equality in all four trade-off bounds:
// Kraus diag(sqrt(1-p), sqrt p), diag(sqrt p, sqrt(1-p)) on qubit (x)
// 2-outcome classical system.
struct SharpFamily {
  KrausChannel T;                // B(C^2 (x) C^2) -> B(C^2)
  HermitianOp pointer;           // 1 (x) (delta_+ - delta_-)/(1-2p), unbiased for sigma_z
  HermitianOp outcome_sign;      // 1 (x) (delta_+ - delta_-), carries the +-1 outcome labels
  double p;
};
SharpFamily sharp_family(double p);

// Random audit over seeded unital CP maps. Every generated instance is run
// through all applicable checks; the worst (most negative) slack per theorem
// is reported.
struct AuditReport {
  int instances = 0;
  int checks_run = 0;
  int violations = 0;
  double min_gap = 0.0;
  std::vector<BoundCheck> violating;   // offending checks, if any
  std::vector<std::string> summary;    // one line per theorem family
};
AuditReport run_random_audit(const std::vector<int>& sys_dims, int trials,
                             std::uint64_t seed, double tol = 1e-9);

// Sharp-family equality sweep; returns the checks for every p in the grid
// (HP, hpdel, offdiag, gencol per point) whose |gap| should vanish.
std::vector<BoundCheck> sharp_equality_sweep(const std::vector<double>& p_grid);

}  // namespace qmeasure

#endif
