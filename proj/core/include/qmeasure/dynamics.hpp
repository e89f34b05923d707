#ifndef QMEASURE_DYNAMICS_HPP
#define QMEASURE_DYNAMICS_HPP

#include <optional>

#include "qmeasure/channel.hpp"
#include "qmeasure/matrix.hpp"

namespace qmeasure {
namespace dynamics {

struct BlochVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double norm() const;
};

// Controlled-not information transfer: ancilla |0>, system alpha0|0> + alpha1|1>.
// The reduced system state has the coherences removed.
struct CnotTransfer {
  CMat joint;    // 4x4 state on ancilla (x) system
  CMat reduced;  // 2x2 reduced system state
};
CnotTransfer cnot_transfer(cplx alpha0, cplx alpha1);

// Hepp spin chain: a single spin flies over N chain spins, flipping spin i
// at step i when the system is set. Returns the coherence weight
// |<theta_0| A theta_1>| / 2 between the two branches for the chosen
// observable, and the decoherence bound ||A||/N where one applies
// (micro and macro observables only).
enum class ChainObservable { micro, macro, product };
struct ChainResult {
  double coherence = 0.0;
  std::optional<double> bound;  // ||A||/N; empty for the product observable
};
ChainResult spin_chain(int n_spins, ChainObservable kind);

// Pointer expectation of the thermal chain state, tr(B tau_beta) = -tanh(beta).
double thermal_epsilon(double beta);

// Resonance fluorescence Bloch dynamics,
//   d/dt (x,y,z) = M (x,y,z) - (0,0,1),
//   M = [[-1/2, 0, 0], [0, -1/2, Omega], [0, -Omega, -1]],
// solved in closed form through the 2x2 exponential of the (y,z) block.
// `strong_field` instead applies the Omega >> 1 interaction-picture map
// diag(e^{-t/2}, e^{-3t/4}, e^{-3t/4}) the disturbance bound is quoted in.
BlochVector bloch_evolve(double omega, const BlochVector& b0, double t,
                         bool strong_field = false);

// Delta(t) = (1 - e^{-3t/4})/2 for the strong-field interaction picture.
double rf_disturbance(double t);

// delta >= 1/2 - sqrt(1 - e^{-3t/2})/2, the infidelity floor (t in units of
// the inverse squared coupling).
double rf_infidelity_bound(double t);

// The strong-field interaction-picture evolution as a qubit channel (Bloch
// contraction with factors (e^{-t/2}, e^{-3t/4}, e^{-3t/4})).
KrausChannel rf_channel(double t);

}  // namespace dynamics
}  // namespace qmeasure

#endif
