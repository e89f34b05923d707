#ifndef QMEASURE_METRICS_HPP
#define QMEASURE_METRICS_HPP

#include "qmeasure/channel.hpp"
#include "qmeasure/matrix.hpp"

namespace qmeasure {

// Figures of merit of one measurement scenario.
struct QualityReport {
  double sigma2 = 0.0;       // maximal added variance
  double delta = 0.0;        // measurement infidelity
  double disturbance = 0.0;  // maximal disturbance
  double d_center = 0.0;     // distance of the observable to the centre
};

// Operator valued sesquilinear form (X,Y)_T = T(X^dag Y) - T(X)^dag T(Y).
CMat sesquilinear_form(const KrausChannel& T, const CMat& X, const CMat& Y);

// Sigma^2 = ||(B,B)_T|| = ||T(B^2) - T(B)^2||.
double max_added_variance(const KrausChannel& T, const HermitianOp& B);

// delta = max over subsets S of the union of the spectra of
// ||1_S(A) - T(1_S(B))||. Exact enumeration; |union spectrum| is capped
// (2^16 subsets), beyond the cap an exception is thrown.
double measurement_infidelity(const KrausChannel& T, const HermitianOp& A,
                              const HermitianOp& B);

// Options of the disturbance search. The supremum over 0 <= P <= 1 equals
// the supremum over pure states psi of the trace distance d(R*(psi), psi)
// (the optimal event is the spectral projector of the positive part of
// R*(psi psi^dag) - psi psi^dag, and state-convexity puts the outer supremum
// on pure states). dim 2 runs a 32 x 16 Bloch grid with Nelder-Mead
// refinement; all dims run seeded multistart alternating ascent over
// (psi, spectral projector) pairs.
struct DisturbanceOptions {
  int restarts = 64;          // random multistart seeds
  int bloch_grid_theta = 32;  // dim-2 grid
  int bloch_grid_phi = 16;
  std::uint64_t seed = 0x51ab0ffULL;
};

// Maximal disturbance Delta = sup_{0<=P<=1} ||R(P) - P|| of a square channel.
double max_disturbance(const KrausChannel& R,
                       const DisturbanceOptions& opts = DisturbanceOptions());

// d(A, Z) = (lambda_max - lambda_min)/2, distance to the scalars.
double distance_to_center(const HermitianOp& A);

// max over events P of |<psi_x| R(P) |psi_y>| for orthonormal psi_x, psi_y.
// Exact in P (positive-part trace); one-dimensional search over the phase.
double coherence(const KrausChannel& R, const CVec& psi_x, const CVec& psi_y);

// Coding imperfection of a classical coding pair, max_disturbance(C o D).
double coding_imperfection(const KrausChannel& coding, const KrausChannel& preparation);

// Pure-state disturbance d(R*(psi), psi); exposed for tests and searches.
double pure_state_disturbance(const KrausChannel& R, const CVec& psi);

}  // namespace qmeasure

#endif
