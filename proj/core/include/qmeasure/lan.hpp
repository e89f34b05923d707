#ifndef QMEASURE_LAN_HPP
#define QMEASURE_LAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmeasure/matrix.hpp"
#include "qmeasure/rng.hpp"

namespace qmeasure {
namespace lan {

// Two-stage adaptive qubit estimation at desk scale: stage 1 localizes by
// separate spin measurements on n^{1-kappa} copies; stage 2 samples the
// limiting outcome laws of the field couplings (heterodyne for (u_x, u_y),
// smoothed block/energy law for u_z) instead of simulating the couplings.

struct LocalParams {
  double ux = 0.0, uy = 0.0, uz = 0.0;
};

enum class SamplingMode { gaussian_limit, exact_block };
enum class LossKind { trace, fidelity };

struct EstimationConfig {
  long n = 100000;           // total copies
  double kappa = 0.1;        // stage-1 exponent, n_tilde = n^{1-kappa}
  double eta = 0.2;          // truncation exponent, threshold 3 n^eta
  double mu0 = 0.9;          // larger eigenvalue of the reference state
  LocalParams u_true;        // local parameter of the true state
  SamplingMode mode = SamplingMode::gaussian_limit;
  long trials = 100000;
  std::uint64_t seed = 1;
  int threads = 1;           // per-trial RNG streams keep results thread-count independent

  void validate() const;
};

struct RiskReport {
  long trials = 0;
  double mean_n_risk = 0.0;        // mean of d(u, u_hat)^2 (the n-rescaled loss)
  double std_error = 0.0;
  double theory = 0.0;             // 8 mu - 4 mu^2 or mu + 1/4
  LossKind loss_kind = LossKind::trace;
  // the same risk via exact trace distance of the reconstructed states,
  // n * || rho_{u/sqrt n} - rho_{u_hat/sqrt n} ||_1^2 (finite-n diagnostic)
  double mean_exact_n_risk = 0.0;
};

//-------------------------------------------------------------------------
// stage 1
//-------------------------------------------------------------------------

struct Stage1Result {
  DensityMatrix rho_tilde;       // rough estimate
  Eigen::Matrix3d rotation;      // aligns the estimated Bloch vector with +z
  Eigen::Vector3d r_tilde;       // raw averaged Bloch estimate (before clipping)
  bool clipped = false;
};

// Separate sigma_x/y/z measurements on floor(n^{1-kappa}/3) copies each;
// |r| > 1 is repaired by radial clipping (the trace-distance minimizer).
Stage1Result stage1_estimate(long n, double kappa, const DensityMatrix& rho_true,
                             std::uint64_t seed);

//-------------------------------------------------------------------------
// local parameterization around rho_0 = diag(mu, 1-mu)
//-------------------------------------------------------------------------

// rho_{u/sqrt n} = U(v) diag(mu + v_z, 1 - mu - v_z) U(v)^dag,
// U(v) = exp(i(v_x sigma_x + v_y sigma_y)), v = u/sqrt(n).
DensityMatrix reconstruct_state(const LocalParams& u, double mu, long n);

// Exact inversion through the eigendecomposition in the rotated frame.
LocalParams local_params(const DensityMatrix& rho, double mu, long n);

//-------------------------------------------------------------------------
// stage 2 outcome laws
//-------------------------------------------------------------------------

// Block-size distribution p_{n,u}(j) over j in {n/2 - floor(n/2), ..., n/2}:
//   p(j) = n_j (1-mu)^{n/2-j} mu^{n/2+j+1} (1 - p^{2j+1}) / (2 mu - 1).
// Exact inverse-CDF sampling over the window |j - n(mu-1/2)| <=
// 12 sqrt(n mu(1-mu)) + 12 with log-domain weights; the window is widened
// once (and an exception thrown after that) if its mass falls below 1 - 1e-9.
class BlockSampler {
 public:
  BlockSampler(long n, double mu_u);

  double sample(Rng& rng) const;         // one j value (half-integers for odd n)
  double window_mass() const { return mass_; }
  double weight_at(double j) const;      // exact p_{n,u}(j), log-domain evaluated

 private:
  void build(double width_factor);

  long n_;
  double mu_;
  double j_lo_ = 0.0;                    // first j in the window
  std::vector<double> cdf_;              // normalized over the window
  double mass_ = 0.0;                    // absolute window mass
};

// One block sample without reusing the cached window.
double sample_block(long n, double mu_u, std::uint64_t seed);

// g_n = j/sqrt(n) - sqrt(n)(mu - 1/2) + N(0, 1/(2 sqrt n)).
double energy_outcome(double j, long n, double mu, std::uint64_t seed);

// Heterodyne law: independent N(u_i, mu/(2(2mu-1)^2)) for i = x, y.
struct Heterodyne {
  double ux, uy;
};
Heterodyne heterodyne_outcome(const LocalParams& u, double mu, std::uint64_t seed);

// Componentwise truncation at 3 n^eta.
LocalParams truncate_estimator(const LocalParams& u_tilde, long n, double eta);

// Local losses: trace 4[(dz)^2 + (2mu-1)^2 ((dx)^2 + (dy)^2)]; fidelity
// (2mu-1)^2 ((dx)^2 + (dy)^2) + (dz)^2 / (1 - (2mu-1)^2).
struct LossPair {
  double trace;
  double fidelity;
};
LossPair loss(const LocalParams& u, const LocalParams& u_hat, double mu);

// Monte Carlo risk of the two-stage estimator in the limit-law model.
RiskReport run_trials(const EstimationConfig& cfg, LossKind loss_kind = LossKind::trace);

}  // namespace lan
}  // namespace qmeasure

#endif
