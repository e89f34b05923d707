#include "qmeasure/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qmeasure {
namespace dynamics {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

CnotTransfer cnot_transfer(cplx alpha0, cplx alpha1) {
  if (std::abs(std::norm(alpha0) + std::norm(alpha1) - 1.0) > 1e-12)
    throw std::invalid_argument("cnot_transfer: amplitudes must be normalized");
  // U(|0> (x) psi) = alpha0 |00> + alpha1 |11>, ancilla factor first
  CVec theta = CVec::Zero(4);
  theta(0) = alpha0;
  theta(3) = alpha1;
  CnotTransfer out;
  out.joint = theta * theta.adjoint();
  out.reduced = partial_trace(out.joint, {2, 2}, {1});
  return out;
}

namespace {

// basis order: chain spins 1..N (most significant first), system spin last
int bit_of(long idx, int pos, int n_total) {
  return static_cast<int>((idx >> (n_total - 1 - pos)) & 1L);
}

}  // namespace

ChainResult spin_chain(int n_spins, ChainObservable kind) {
  if (n_spins < 1 || n_spins > 14)
    throw std::invalid_argument("spin_chain: N must lie in [1, 14] for exact state vectors");
  const int n_total = n_spins + 1;
  const long dim = 1L << n_total;

  // branch states: U_N ... U_1 (|0...0> (x) |s>), where U_i flips chain spin
  // i when the system spin (last factor) is set; simulated explicitly
  auto apply_cnot = [&](CVec& v, int chain_site) {
    CVec out = CVec::Zero(dim);
    for (long i = 0; i < dim; ++i) {
      if (v(i) == cplx(0.0, 0.0)) continue;
      long j = i;
      if (bit_of(i, n_total - 1, n_total) == 1)  // system spin set
        j = i ^ (1L << (n_total - 1 - (chain_site - 1)));
      out(j) += v(i);
    }
    v = out;
  };
  CVec theta0 = CVec::Zero(dim), theta1 = CVec::Zero(dim);
  theta0(0) = 1.0;  // |0...0>|0>
  theta1(1) = 1.0;  // |0...0>|1>
  for (int i = 1; i <= n_spins; ++i) {
    apply_cnot(theta0, i);
    apply_cnot(theta1, i);
  }

  // <theta0| A |theta1> for the requested observable
  auto matrix_element = [&](auto&& apply_A) {
    CVec a1 = apply_A(theta1);
    return (theta0.adjoint() * a1)(0);
  };

  cplx elem = 0.0;
  std::optional<double> bound;
  switch (kind) {
    case ChainObservable::micro: {
      // sigma_x on chain site 1
      elem = matrix_element([&](const CVec& v) {
        CVec out = CVec::Zero(dim);
        for (long i = 0; i < dim; ++i)
          out(i ^ (1L << (n_total - 1))) += v(i);
        return out;
      });
      bound = 1.0 / n_spins;
      break;
    }
    case ChainObservable::macro: {
      // mean spin (1/N) sum sigma_x,i over the chain
      elem = matrix_element([&](const CVec& v) {
        CVec out = CVec::Zero(dim);
        for (int s = 0; s < n_spins; ++s)
          for (long i = 0; i < dim; ++i)
            out(i ^ (1L << (n_total - 1 - s))) += v(i) / static_cast<double>(n_spins);
        return out;
      });
      bound = 1.0 / n_spins;
      break;
    }
    case ChainObservable::product: {
      // sigma_x on every spin including the probed one
      elem = matrix_element([&](const CVec& v) {
        CVec out = CVec::Zero(dim);
        for (long i = 0; i < dim; ++i) out(~i & (dim - 1)) += v(i);
        return out;
      });
      bound.reset();
      break;
    }
  }
  ChainResult r;
  r.coherence = 0.5 * std::abs(elem);  // equal-weight superposition
  r.bound = bound;
  return r;
}

double thermal_epsilon(double beta) { return -std::tanh(beta); }

namespace {

// exp(A t) for real 2x2 A via A = alpha I + N, N^2 = mu^2 I
Eigen::Matrix2d expm2(const Eigen::Matrix2d& a, double t) {
  const double alpha = 0.5 * a.trace();
  Eigen::Matrix2d n = a - alpha * Eigen::Matrix2d::Identity();
  const double mu2 = n(0, 0) * n(0, 0) + n(0, 1) * n(1, 0);  // n^2 = mu2 I
  double ch, sh_over;                                        // cosh(mu t), sinh(mu t)/mu
  const double w = mu2 * t * t;
  if (std::abs(w) < 1e-12) {
    ch = 1.0 + 0.5 * w;
    sh_over = t * (1.0 + w / 6.0);
  } else if (mu2 > 0.0) {
    const double mu = std::sqrt(mu2);
    ch = std::cosh(mu * t);
    sh_over = std::sinh(mu * t) / mu;
  } else {
    const double om = std::sqrt(-mu2);
    ch = std::cos(om * t);
    sh_over = std::sin(om * t) / om;
  }
  return std::exp(alpha * t) * (ch * Eigen::Matrix2d::Identity() + sh_over * n);
}

}  // namespace

BlochVector bloch_evolve(double omega, const BlochVector& b0, double t,
                         bool strong_field) {
  if (t < 0.0) throw std::invalid_argument("bloch_evolve: t >= 0");
  BlochVector b;
  if (strong_field) {
    b.x = std::exp(-0.5 * t) * b0.x;
    b.y = std::exp(-0.75 * t) * b0.y;
    b.z = std::exp(-0.75 * t) * b0.z;
    return b;
  }
  b.x = std::exp(-0.5 * t) * b0.x;
  // (y, z) block: w' = A w - (0, 1), equilibrium w_inf = A^{-1} (0, 1)
  Eigen::Matrix2d a;
  a << -0.5, omega, -omega, -1.0;
  Eigen::Vector2d rhs(0.0, 1.0);
  Eigen::Vector2d w_inf = a.colPivHouseholderQr().solve(rhs);
  Eigen::Vector2d w0(b0.y, b0.z);
  Eigen::Vector2d w = expm2(a, t) * (w0 - w_inf) + w_inf;
  b.y = w(0);
  b.z = w(1);
  return b;
}

double rf_disturbance(double t) { return 0.5 * (1.0 - std::exp(-0.75 * t)); }

double rf_infidelity_bound(double t) {
  if (t < 0.0) throw std::invalid_argument("rf_infidelity_bound: t >= 0");
  return 0.5 - 0.5 * std::sqrt(1.0 - std::exp(-1.5 * t));
}

KrausChannel rf_channel(double t) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = std::exp(-0.5 * t);
  m(1, 1) = std::exp(-0.75 * t);
  m(2, 2) = std::exp(-0.75 * t);
  return channel_from_bloch_map(m);
}

}  // namespace dynamics
}  // namespace qmeasure
