#include "qmeasure/lan.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qmeasure/special.hpp"

using namespace qmeasure;
using namespace qmeasure::lan;

TEST_CASE("stage 1 is unbiased and stays inside the Bloch ball") {
  // tracial input: the averaged coins are centered
  DensityMatrix mixed = DensityMatrix::from_bloch(0, 0, 0);
  double sum = 0.0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    Stage1Result s = stage1_estimate(10000, 0.1, mixed, 100 + r);
    sum += s.r_tilde(0) + s.r_tilde(1) + s.r_tilde(2);
  }
  // each component has sd ~ 1/sqrt(m); the mean over 3*400 draws is tiny
  CHECK(std::abs(sum / (3 * reps)) < 3.0 / std::sqrt(3.0 * reps * 1327.0));

  // pure input: clipping activates and still yields a valid state
  DensityMatrix pure = DensityMatrix::from_bloch(0, 0, 1);
  int clipped = 0;
  for (int r = 0; r < 200; ++r) {
    Stage1Result s = stage1_estimate(2000, 0.1, pure, 900 + r);
    clipped += s.clipped ? 1 : 0;
    CHECK(s.rho_tilde.bloch().norm() <= 1.0 + 1e-12);
    // rotation really aligns the estimate with +z
    Eigen::Vector3d z = s.rotation * s.rho_tilde.bloch();
    CHECK(std::abs(z(0)) < 1e-12);
    CHECK(std::abs(z(1)) < 1e-12);
    CHECK(z(2) >= 0.0);
  }
  CHECK(clipped > 0);
}

TEST_CASE("stage 1 Hoeffding tail") {
  // empirical miss frequency of || rho_tilde - rho ||_1^2 > 3 n^{2 eps - 1}
  // stays below 6 exp(-n_tilde n^{2 eps - 1} / 2)
  const long n = 10000;
  const double kappa = 0.1, eps = 0.15;
  const double n_tilde = std::pow(n, 1.0 - kappa);
  const double c = std::pow(n, 2.0 * eps - 1.0);
  const double bound = 6.0 * std::exp(-0.5 * n_tilde * c);
  DensityMatrix rho = DensityMatrix::from_bloch(0, 0, 0);  // worst-case variance
  const Eigen::Vector3d r_true = rho.bloch();
  int miss = 0;
  const int reps = 2000;
  for (int rep = 0; rep < reps; ++rep) {
    Stage1Result s = stage1_estimate(n, kappa, rho, 5000 + rep);
    // trace-norm-squared distance is the squared Euclidean Bloch distance
    const double d2 = (s.rho_tilde.bloch() - r_true).squaredNorm();
    if (d2 > 3.0 * c) ++miss;
  }
  CHECK(static_cast<double>(miss) / reps <= bound);
}

TEST_CASE("local parameterization round trip") {
  const double mu = 0.85;
  const long n = 100000;
  CHECK(local_params(reconstruct_state(LocalParams{0, 0, 0}, mu, n), mu, n).ux ==
        doctest::Approx(0.0));

  // a uz-only perturbation shifts the eigenvalue by exactly uz/sqrt(n)
  LocalParams uz_only{0, 0, 2.5};
  DensityMatrix rho = reconstruct_state(uz_only, mu, n);
  EigH e = eig_hermitian(HermitianOp(rho.matrix()));
  CHECK(e.values(0) == doctest::Approx(mu + 2.5 / std::sqrt(double(n))).epsilon(1e-12));

  for (const auto& u : {LocalParams{1.2, -0.7, 0.4}, LocalParams{3.0, 2.0, -2.0},
                        LocalParams{-0.3, 0.0, 3.1}}) {
    LocalParams back = local_params(reconstruct_state(u, mu, n), mu, n);
    CHECK(back.ux == doctest::Approx(u.ux).epsilon(1e-10));
    CHECK(back.uy == doctest::Approx(u.uy).epsilon(1e-10));
    CHECK(back.uz == doctest::Approx(u.uz).epsilon(1e-10));
  }

  CHECK_THROWS(local_params(DensityMatrix::from_bloch(0, 0, 0), mu, n));
}

TEST_CASE("block sampler") {
  // window carries all the mass
  BlockSampler s(10000, 0.9);
  CHECK(s.window_mass() >= 1.0 - 1e-9);

  // small n: weights match the independent geometric-sum oracle
  const long n4 = 4;
  const double mu = 0.8;
  BlockSampler s4(n4, mu);
  double total = 0.0;
  for (double j : {0.0, 1.0, 2.0}) {
    // oracle: p(j) = n_j sum_{m=-j}^{j} mu^{n/2+m} (1-mu)^{n/2-m}
    const double nj = (j == 2.0) ? 1.0 : (j == 1.0) ? 3.0 : 2.0;
    double sum = 0.0;
    for (double m = -j; m <= j + 0.5; m += 1.0)
      sum += std::pow(mu, 2.0 + m) * std::pow(1.0 - mu, 2.0 - m);
    CHECK(s4.weight_at(j) == doctest::Approx(nj * sum).epsilon(1e-12));
    total += s4.weight_at(j);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // odd n uses the half-integer lattice and still normalizes
  BlockSampler s5(5, 0.75);
  double tot5 = 0.0;
  for (double j = 0.5; j <= 2.5; j += 1.0) tot5 += s5.weight_at(j);
  CHECK(tot5 == doctest::Approx(1.0).epsilon(1e-12));

  // E[j]/n approaches mu - 1/2
  Rng rng(77);
  BlockSampler big(100000, 0.9);
  double mean = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) mean += big.sample(rng);
  mean /= reps;
  const double sd_j = std::sqrt(100000 * 0.9 * 0.1);
  CHECK(std::abs(mean - 100000 * 0.4) < 4.0 * sd_j / std::sqrt(double(reps)) + 2.0);

  CHECK_THROWS(BlockSampler(100, 0.5));
}

TEST_CASE("energy outcome law approaches N(u_z, mu(1-mu))") {
  // sample j from the exact block law at the true mu_u, smooth, and compare
  // the empirical law with the Gaussian limit via the KS distance
  const long n = 100000;
  const double mu = 0.9, uz = 0.0;
  BlockSampler sampler(n, mu + uz / std::sqrt(double(n)));
  Rng rng(123);
  const int reps = 100000;
  std::vector<double> xs(reps);
  const double rt = std::sqrt(double(n));
  for (int i = 0; i < reps; ++i) {
    const double j = sampler.sample(rng);
    xs[i] = j / rt - rt * (mu - 0.5) + rng.normal() * std::sqrt(0.5 / rt);
  }
  std::sort(xs.begin(), xs.end());
  const double sd = std::sqrt(mu * (1.0 - mu));
  double ks = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double f = gauss_cdf((xs[i] - uz) / sd);
    ks = std::max(ks, std::abs(f - (i + 1.0) / reps));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / reps));
  }
  CHECK(ks < 0.01);

  // smoothing noise has variance 1/(2 sqrt n)
  double var = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double g = energy_outcome(n * 0.4, n, mu, 999 + i) -
                     (n * 0.4 / rt - rt * (mu - 0.5));
    var += g * g;
  }
  var /= 200000;
  CHECK(var == doctest::Approx(0.5 / rt).epsilon(0.02));
}

TEST_CASE("heterodyne outcome law") {
  const double mu = 0.9;
  CHECK(mu / (2.0 * 0.8 * 0.8) == doctest::Approx(0.703125));
  LocalParams u{1.0, -2.0, 0.0};
  double mx = 0.0, my = 0.0, vx = 0.0;
  const int reps = 200000;
  for (int i = 0; i < reps; ++i) {
    Heterodyne h = heterodyne_outcome(u, mu, 5000 + i);
    mx += h.ux;
    my += h.uy;
    vx += (h.ux - u.ux) * (h.ux - u.ux);
  }
  mx /= reps;
  my /= reps;
  vx /= reps;
  const double sd = std::sqrt(0.703125);
  CHECK(std::abs(mx - u.ux) < 3.0 * sd / std::sqrt(double(reps)));
  CHECK(std::abs(my - u.uy) < 3.0 * sd / std::sqrt(double(reps)));
  CHECK(vx == doctest::Approx(0.703125).epsilon(0.02));

  CHECK_THROWS(heterodyne_outcome(u, 0.5, 1));
}

TEST_CASE("estimator truncation") {
  const long n = 100000;
  const double eta = 0.2;
  const double cap = 3.0 * std::pow(double(n), eta);
  LocalParams in{1.0, -2.0, 0.5};
  LocalParams out = truncate_estimator(in, n, eta);
  CHECK(out.ux == 1.0);
  CHECK(out.uy == -2.0);
  CHECK(out.uz == 0.5);

  LocalParams wild{4.0 * std::pow(double(n), eta), 0.0, -cap - 1.0};
  LocalParams cut = truncate_estimator(wild, n, eta);
  CHECK(cut.ux == 0.0);
  CHECK(cut.uz == 0.0);

  // improvement property: whenever ||u|| <= n^eta, truncation never hurts
  Rng rng(31);
  for (int rep = 0; rep < 2000; ++rep) {
    LocalParams u{rng.normal() * 3, rng.normal() * 3, rng.normal() * 3};
    const double nu = std::sqrt(u.ux * u.ux + u.uy * u.uy + u.uz * u.uz);
    if (nu > std::pow(double(n), eta)) continue;
    LocalParams tilde{u.ux + 20 * rng.normal(), u.uy + 20 * rng.normal(),
                      u.uz + 20 * rng.normal()};
    LocalParams hat = truncate_estimator(tilde, n, eta);
    CHECK(std::abs(hat.ux - u.ux) <= std::abs(tilde.ux - u.ux) + 1e-12);
    CHECK(std::abs(hat.uy - u.uy) <= std::abs(tilde.uy - u.uy) + 1e-12);
    CHECK(std::abs(hat.uz - u.uz) <= std::abs(tilde.uz - u.uz) + 1e-12);
  }
}

TEST_CASE("loss values") {
  LocalParams u{0.5, -1.0, 2.0};
  LossPair zero = loss(u, u, 0.9);
  CHECK(zero.trace == 0.0);
  CHECK(zero.fidelity == 0.0);

  LossPair l = loss(LocalParams{0, 0, 1}, LocalParams{0, 0, 0}, 0.9);
  CHECK(l.trace == doctest::Approx(4.0));
  CHECK(l.fidelity == doctest::Approx(1.0 / 0.36).epsilon(1e-12));

  CHECK_THROWS(loss(u, u, 0.5));
}

TEST_CASE("run_trials reproduces the asymptotic risks") {
  EstimationConfig cfg;
  cfg.n = 100000;
  cfg.mu0 = 0.9;
  cfg.trials = 20000;
  cfg.seed = 42;
  cfg.mode = SamplingMode::gaussian_limit;

  RiskReport trace_report = run_trials(cfg, LossKind::trace);
  CHECK(trace_report.theory == doctest::Approx(3.96));
  CHECK(std::abs(trace_report.mean_n_risk - 3.96) < 3.0 * trace_report.std_error);
  // finite-n diagnostic agrees with the local loss at these scales
  CHECK(trace_report.mean_exact_n_risk ==
        doctest::Approx(trace_report.mean_n_risk).epsilon(0.02));

  RiskReport fid_report = run_trials(cfg, LossKind::fidelity);
  CHECK(fid_report.theory == doctest::Approx(1.15));
  CHECK(std::abs(fid_report.mean_n_risk - 1.15) < 3.0 * fid_report.std_error);

  cfg.mu0 = 0.75;
  RiskReport r75 = run_trials(cfg, LossKind::trace);
  CHECK(r75.theory == doctest::Approx(3.75));
  CHECK(std::abs(r75.mean_n_risk - 3.75) < 3.0 * r75.std_error);
}

TEST_CASE("exact block mode agrees with the gaussian limit") {
  EstimationConfig cfg;
  cfg.n = 100000;
  cfg.mu0 = 0.9;
  cfg.trials = 20000;
  cfg.seed = 7;
  RiskReport gauss = run_trials(cfg, LossKind::trace);
  cfg.mode = SamplingMode::exact_block;
  RiskReport block = run_trials(cfg, LossKind::trace);
  const double se = std::hypot(gauss.std_error, block.std_error);
  CHECK(std::abs(gauss.mean_n_risk - block.mean_n_risk) < 3.0 * se);
}

TEST_CASE("determinism by seed, independent of worker count") {
  EstimationConfig cfg;
  cfg.n = 10000;
  cfg.mu0 = 0.8;
  cfg.trials = 5000;
  cfg.seed = 2024;
  RiskReport a = run_trials(cfg, LossKind::trace);
  RiskReport b = run_trials(cfg, LossKind::trace);
  cfg.threads = 4;
  RiskReport c = run_trials(cfg, LossKind::trace);
  CHECK(a.mean_n_risk == b.mean_n_risk);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean_n_risk == c.mean_n_risk);
  CHECK(a.std_error == c.std_error);

  cfg.threads = 1;
  cfg.seed = 2025;
  RiskReport d = run_trials(cfg, LossKind::trace);
  CHECK(d.mean_n_risk != a.mean_n_risk);
}

TEST_CASE("config validation") {
  EstimationConfig cfg;
  cfg.kappa = 1.5;
  CHECK_THROWS(cfg.validate());
  cfg.kappa = 0.1;
  cfg.eta = 0.3;
  CHECK_THROWS(cfg.validate());
  cfg.eta = 0.2;
  cfg.mu0 = 0.5;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("stage-1 failures are rare and their risk contribution is bounded") {
  const long n = 10000;
  const double kappa = 0.1, eps = 0.15;
  const double n_tilde = std::pow(n, 1.0 - kappa);
  const double c = std::pow(n, 2.0 * eps - 1.0);
  const double freq_bound = 6.0 * std::exp(-0.5 * n_tilde * c);
  DensityMatrix rho = DensityMatrix::from_bloch(0.2, -0.1, 0.6);
  const Eigen::Vector3d r_true = rho.bloch();
  int miss = 0;
  double miss_risk = 0.0;
  const int reps = 3000;
  for (int rep = 0; rep < reps; ++rep) {
    Stage1Result s = stage1_estimate(n, kappa, rho, 31000 + rep);
    const double d2 = (s.rho_tilde.bloch() - r_true).squaredNorm();
    if (d2 > 3.0 * c) {
      ++miss;
      miss_risk += d2;
    }
  }
  CHECK(static_cast<double>(miss) / reps <= freq_bound);
  // each failure costs at most 4 in squared trace norm
  CHECK(miss_risk / reps <= 4.0 * freq_bound);
}
