#include "qmeasure/lan.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace qmeasure {
namespace lan {

void EstimationConfig::validate() const {
  if (n < 10) throw std::invalid_argument("EstimationConfig: n too small");
  if (kappa <= 0.0 || kappa >= 1.0) throw std::invalid_argument("EstimationConfig: 0 < kappa < 1");
  if (eta <= 0.0 || eta >= 0.25) throw std::invalid_argument("EstimationConfig: 0 < eta < 1/4");
  if (mu0 <= 0.5 + 1e-3 || mu0 >= 1.0) throw std::invalid_argument("EstimationConfig: 1/2 < mu0 < 1");
  if (trials < 1) throw std::invalid_argument("EstimationConfig: trials >= 1");
  if (threads < 1) throw std::invalid_argument("EstimationConfig: threads >= 1");
}

Stage1Result stage1_estimate(long n, double kappa, const DensityMatrix& rho_true,
                             std::uint64_t seed) {
  const double n_tilde = std::pow(static_cast<double>(n), 1.0 - kappa);
  const long m = static_cast<long>(n_tilde / 3.0);
  if (m < 1) throw std::invalid_argument("stage1_estimate: n^{1-kappa}/3 must be >= 1");

  const Eigen::Vector3d r = rho_true.bloch();
  Rng rng(seed);
  Eigen::Vector3d r_tilde = Eigen::Vector3d::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    long sum = 0;
    const double p_up = 0.5 * (1.0 + r(axis));
    for (long k = 0; k < m; ++k) sum += rng.coin(p_up);
    r_tilde(axis) = static_cast<double>(sum) / m;
  }

  Stage1Result out{DensityMatrix::from_bloch(0, 0, 0), Eigen::Matrix3d::Identity(),
                   r_tilde, false};
  Eigen::Vector3d r_hat = r_tilde;
  if (r_hat.norm() > 1.0) {
    // radial clipping: trace distance is half the Euclidean Bloch distance,
    // so the nearest state sits on the same ray
    r_hat /= r_hat.norm();
    out.clipped = true;
  }
  out.rho_tilde = DensityMatrix::from_bloch(r_hat(0), r_hat(1), r_hat(2));

  // minimal rotation taking r_hat to +z
  const double nr = r_hat.norm();
  if (nr > 1e-12) {
    Eigen::Vector3d a = r_hat / nr;
    const double c = a(2);
    Eigen::Vector3d axis = a.cross(Eigen::Vector3d::UnitZ());
    const double s = axis.norm();
    if (s < 1e-12) {
      if (c > 0.0) {
        out.rotation = Eigen::Matrix3d::Identity();
      } else {  // antipodal: rotate pi about x
        out.rotation = Eigen::Matrix3d::Identity();
        out.rotation(1, 1) = -1.0;
        out.rotation(2, 2) = -1.0;
      }
    } else {
      axis /= s;
      Eigen::Matrix3d k;
      k << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
      out.rotation = Eigen::Matrix3d::Identity() + s * k + (1.0 - c) * k * k;
    }
  }
  return out;
}

namespace {

CMat local_unitary(double vx, double vy) {
  const double r = std::sqrt(vx * vx + vy * vy);
  CMat m = vx * pauli_x() + vy * pauli_y();
  if (r < 1e-300) return identity(2);
  return std::cos(r) * identity(2) + cplx(0.0, 1.0) * (std::sin(r) / r) * m;
}

}  // namespace

DensityMatrix reconstruct_state(const LocalParams& u, double mu, long n) {
  const double rt = std::sqrt(static_cast<double>(n));
  const double vz = u.uz / rt;
  CMat d = CMat::Zero(2, 2);
  // eigenvalues clamped to [0, 1]; at the documented n they are untouched
  d(0, 0) = std::min(1.0, std::max(0.0, mu + vz));
  d(1, 1) = 1.0 - d(0, 0);
  CMat w = local_unitary(u.ux / rt, u.uy / rt);
  return DensityMatrix(w * d * w.adjoint());
}

LocalParams local_params(const DensityMatrix& rho, double mu, long n) {
  EigH es = eig_hermitian(HermitianOp(rho.matrix(), 1e-9));
  if (es.values(0) - es.values(1) < 1e-9)
    throw std::invalid_argument("local_params: degenerate state");
  const double rt = std::sqrt(static_cast<double>(n));
  LocalParams u;
  u.uz = (es.values(0) - mu) * rt;
  CVec w0 = es.vectors.col(0);
  // fix the phase so the top component is real and positive
  const cplx ph = w0(0);
  if (std::abs(ph) < 1e-12)
    throw std::invalid_argument("local_params: state outside the chart (v ~ pi/2)");
  w0 *= std::conj(ph) / std::abs(ph);
  const double cr = std::min(1.0, std::max(-1.0, w0(0).real()));
  const double r = std::acos(cr);
  if (r < 1e-12) {
    u.ux = u.uy = 0.0;
  } else {
    const double s = std::sin(r) / r;
    // column 0 of U(v) is (cos r, (sin r / r)(-v_y + i v_x))
    u.ux = w0(1).imag() / s * rt;
    u.uy = -w0(1).real() / s * rt;
  }
  return u;
}

BlockSampler::BlockSampler(long n, double mu_u) : n_(n), mu_(mu_u) {
  if (mu_u <= 0.5 || mu_u >= 1.0)
    throw std::invalid_argument("BlockSampler: mu_u must lie in (1/2, 1)");
  build(1.0);
  if (mass_ < 1.0 - 1e-9) {
    build(2.0);
    if (mass_ < 1.0 - 1e-9)
      throw std::runtime_error("BlockSampler: window mass below 1 - 1e-9 after widening");
  }
}

double BlockSampler::weight_at(double j) const {
  const double half_n = 0.5 * n_;
  const long k = std::lround(half_n - j);  // multiplicity index
  if (k < 0 || j > half_n) return 0.0;
  const double log_binom = std::lgamma(n_ + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n_ - k + 1.0);
  const double log_nj =
      log_binom + std::log1p(-static_cast<double>(k) / (n_ - k + 1.0));
  const double p = (1.0 - mu_) / mu_;
  const double log_w = log_nj + (half_n - j) * std::log(1.0 - mu_) +
                       (half_n + j + 1.0) * std::log(mu_) - std::log(2.0 * mu_ - 1.0) +
                       std::log1p(-std::exp((2.0 * j + 1.0) * std::log(p)));
  return std::exp(log_w);
}

void BlockSampler::build(double width_factor) {
  const double half_n = 0.5 * n_;
  const double center = n_ * (mu_ - 0.5);
  const double width = width_factor * (12.0 * std::sqrt(n_ * mu_ * (1.0 - mu_)) + 12.0);
  const double j_min = half_n - std::floor(half_n);  // 0 or 1/2 lattice base
  double lo = std::max(j_min, std::floor(center - width) + j_min);
  double hi = std::min(half_n, std::ceil(center + width) + j_min);
  if (lo > hi) {
    lo = j_min;
    hi = half_n;
  }
  j_lo_ = lo;
  const long count = static_cast<long>(hi - lo) + 1;
  cdf_.assign(count, 0.0);
  double acc = 0.0;
  for (long i = 0; i < count; ++i) {
    acc += weight_at(lo + i);
    cdf_[i] = acc;
  }
  mass_ = acc;
}

double BlockSampler::sample(Rng& rng) const {
  const double u = rng.uniform() * mass_;
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  const long idx = std::min<long>(it - cdf_.begin(), cdf_.size() - 1);
  return j_lo_ + idx;
}

double sample_block(long n, double mu_u, std::uint64_t seed) {
  BlockSampler sampler(n, mu_u);
  Rng rng(seed);
  return sampler.sample(rng);
}

double energy_outcome(double j, long n, double mu, std::uint64_t seed) {
  Rng rng(seed);
  const double rt = std::sqrt(static_cast<double>(n));
  return j / rt - rt * (mu - 0.5) + rng.normal() * std::sqrt(0.5 / rt);
}

Heterodyne heterodyne_outcome(const LocalParams& u, double mu, std::uint64_t seed) {
  if (mu - 0.5 < 1e-3)
    throw std::invalid_argument("heterodyne_outcome: mu - 1/2 >= 1e-3 required");
  Rng rng(seed);
  const double sd = std::sqrt(mu / (2.0 * (2.0 * mu - 1.0) * (2.0 * mu - 1.0)));
  return Heterodyne{u.ux + sd * rng.normal(), u.uy + sd * rng.normal()};
}

LocalParams truncate_estimator(const LocalParams& u_tilde, long n, double eta) {
  const double cap = 3.0 * std::pow(static_cast<double>(n), eta);
  LocalParams u;
  u.ux = std::abs(u_tilde.ux) <= cap ? u_tilde.ux : 0.0;
  u.uy = std::abs(u_tilde.uy) <= cap ? u_tilde.uy : 0.0;
  u.uz = std::abs(u_tilde.uz) <= cap ? u_tilde.uz : 0.0;
  return u;
}

LossPair loss(const LocalParams& u, const LocalParams& u_hat, double mu) {
  if (mu <= 0.5 || mu >= 1.0)
    throw std::invalid_argument("loss: mu in (1/2, 1) required");
  const double dx = u.ux - u_hat.ux;
  const double dy = u.uy - u_hat.uy;
  const double dz = u.uz - u_hat.uz;
  const double g = (2.0 * mu - 1.0) * (2.0 * mu - 1.0);
  LossPair l;
  l.trace = 4.0 * (dz * dz + g * (dx * dx + dy * dy));
  l.fidelity = g * (dx * dx + dy * dy) + dz * dz / (1.0 - g);
  return l;
}

RiskReport run_trials(const EstimationConfig& cfg, LossKind loss_kind) {
  cfg.validate();
  const long n = cfg.n;
  const double rt = std::sqrt(static_cast<double>(n));
  const double mu = cfg.mu0;
  const LocalParams& u = cfg.u_true;

  // exact-block mode samples j under the true mu_u = mu0 + u_z/sqrt(n)
  const double mu_u = mu + u.uz / rt;
  std::unique_ptr<BlockSampler> sampler;
  if (cfg.mode == SamplingMode::exact_block)
    sampler = std::make_unique<BlockSampler>(n, mu_u);

  const double het_sd = std::sqrt(mu / (2.0 * (2.0 * mu - 1.0) * (2.0 * mu - 1.0)));
  const double z_sd = std::sqrt(mu * (1.0 - mu));

  std::vector<double> losses(cfg.trials);
  std::vector<double> exact(cfg.trials);

  auto run_range = [&](long lo, long hi) {
    for (long t = lo; t < hi; ++t) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t) + 1);
      LocalParams u_tilde;
      u_tilde.ux = u.ux + het_sd * rng.normal();
      u_tilde.uy = u.uy + het_sd * rng.normal();
      if (cfg.mode == SamplingMode::gaussian_limit) {
        u_tilde.uz = u.uz + z_sd * rng.normal();
      } else {
        const double j = sampler->sample(rng);
        u_tilde.uz = j / rt - rt * (mu - 0.5) + rng.normal() * std::sqrt(0.5 / rt);
      }
      LocalParams u_hat = truncate_estimator(u_tilde, n, cfg.eta);
      LossPair l = loss(u, u_hat, mu);
      losses[t] = (loss_kind == LossKind::trace) ? l.trace : l.fidelity;
      const double tn =
          trace_norm(reconstruct_state(u, mu, n).matrix() -
                     reconstruct_state(u_hat, mu, n).matrix());
      exact[t] = n * tn * tn;
    }
  };

  if (cfg.threads == 1) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (cfg.trials + cfg.threads - 1) / cfg.threads;
    for (int w = 0; w < cfg.threads; ++w) {
      const long lo = w * chunk;
      const long hi = std::min<long>(cfg.trials, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  RiskReport rep;
  rep.trials = cfg.trials;
  rep.loss_kind = loss_kind;
  double sum = 0.0, sum2 = 0.0, sum_exact = 0.0;
  for (long t = 0; t < cfg.trials; ++t) {
    sum += losses[t];
    sum2 += losses[t] * losses[t];
    sum_exact += exact[t];
  }
  rep.mean_n_risk = sum / cfg.trials;
  const double var = std::max(0.0, sum2 / cfg.trials - rep.mean_n_risk * rep.mean_n_risk);
  rep.std_error = std::sqrt(var / cfg.trials);
  rep.mean_exact_n_risk = sum_exact / cfg.trials;
  rep.theory = (loss_kind == LossKind::trace) ? (8.0 * mu - 4.0 * mu * mu) : (mu + 0.25);
  return rep;
}

}  // namespace lan
}  // namespace qmeasure
