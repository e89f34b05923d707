// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Usage:
//   acceptance_tests            run all criteria
//   acceptance_tests 3 7        run a subset
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmeasure/bounds.hpp"
#include "qmeasure/dynamics.hpp"
#include "qmeasure/fock.hpp"
#include "qmeasure/lan.hpp"
#include "qmeasure/metrics.hpp"
#include "qmeasure/pointer_opt.hpp"
#include "qmeasure/quadrature.hpp"
#include "qmeasure/rng.hpp"

using namespace qmeasure;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [FAILED: " << what << "]";
    }
  }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

//---------------------------------------------------------------------------
// 1. pointer optimization constants
//---------------------------------------------------------------------------
Outcome criterion1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  pointer::OptimizedPointer ox = pointer::optimize_pointer(pointer::Target::sigma_x, -1.0);
  pointer::OptimizedPointer oz = pointer::optimize_pointer(pointer::Target::sigma_z, -1.0);
  const double elapsed = seconds_since(t0);
  const double product = ox.quality.sigma * oz.quality.sigma;
  out.detail << "eps*=" << ox.param << " C1=" << ox.spec.c1 << " Sigma=" << ox.quality.sigma
             << " delta*=" << oz.param << " D2=" << oz.spec.c2 << " D3=" << oz.spec.c3
             << " SigmaTilde=" << oz.quality.sigma << " product=" << product << " ("
             << elapsed << " s)";
  out.require(std::abs(ox.param - 0.605) <= 0.005, "eps* = 0.605 +- 0.005");
  out.require(std::abs(ox.spec.c1 - 2.359) <= 0.005, "C1 = 2.359 +- 0.005");
  out.require(std::abs(ox.quality.sigma - 0.685) <= 0.003, "Sigma = 0.685 +- 0.003");
  out.require(std::abs(oz.param - 2.701) <= 0.01, "delta* = 2.701 +- 0.01");
  out.require(std::abs(oz.spec.c2 - (-21.649)) <= 0.05, "D2 = -21.649 +- 0.05");
  out.require(std::abs(oz.spec.c3 - 5.391) <= 0.01, "D3 = 5.391 +- 0.01");
  out.require(std::abs(oz.quality.sigma - 1.540) <= 0.003, "SigmaTilde = 1.540 +- 0.003");
  out.require(std::abs(product - 1.056) <= 0.005, "Sigma*SigmaTilde = 1.056 +- 0.005");
  out.require(elapsed < 2.0, "runtime < 2 s");
  return out;
}

//---------------------------------------------------------------------------
// 2. naive pointer qualities
//---------------------------------------------------------------------------
Outcome criterion2() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  pointer::NaiveMinima m = pointer::naive_minima();
  const double product = std::sqrt(m.sigma2 * m.sigma2_tilde);
  const double elapsed = seconds_since(t0);
  out.detail << "t*=" << m.t_sigma << "/" << m.t_tilde << " Sigma^2=" << m.sigma2
             << " SigmaTilde^2=" << m.sigma2_tilde << " product=" << product << " ("
             << elapsed << " s)";
  out.require(std::abs(m.t_sigma - 2.513) <= 0.002, "argmin Sigma^2 = 2.513 +- 0.002");
  out.require(std::abs(m.t_tilde - 2.513) <= 0.002, "argmin SigmaTilde^2 = 2.513 +- 0.002");
  out.require(std::abs(m.sigma2 - 2.228) <= 0.002, "Sigma^2 = 2.228 +- 0.002");
  out.require(std::abs(m.sigma2_tilde - 8.836) <= 0.005, "SigmaTilde^2 = 8.836 +- 0.005");
  out.require(std::abs(product - 4.437) <= 0.005, "Sigma*SigmaTilde = 4.437 +- 0.005");
  out.require(elapsed < 1.0, "runtime < 1 s");
  return out;
}

//---------------------------------------------------------------------------
// 3. closed forms vs quadrature oracle
//---------------------------------------------------------------------------
Outcome criterion3() {
  Outcome out;
  double worst = 0.0;
  for (double eps : {0.2, 0.605, 1.0, 2.0}) {
    pointer::PointerSpec spec = pointer::rational_spec(pointer::Target::sigma_x, eps, -1.0);
    pointer::QualityPair oracle = pointer::quality_from_quadrature(spec);
    pointer::QualityPair closed = pointer::d1_d2(pointer::Target::sigma_x, eps, -1.0);
    worst = std::max(worst, std::abs(oracle.d1 - closed.d1));
    worst = std::max(worst, std::abs(oracle.d2 - closed.d2));
  }
  out.detail << "max |closed - quadrature| = " << worst;
  out.require(worst <= 1e-6, "agreement within 1e-6");
  return out;
}

//---------------------------------------------------------------------------
// 4. random bound audit + sharp equality sweep
//---------------------------------------------------------------------------
Outcome criterion4() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  AuditReport rep = run_random_audit({2, 3, 4}, 1000, 90210, 1e-9);
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(0.05 * i);
  auto sweep = sharp_equality_sweep(grid);
  double max_gap = 0.0;
  for (const BoundCheck& c : sweep) max_gap = std::max(max_gap, std::abs(c.gap));
  const double elapsed = seconds_since(t0);
  out.detail << "checks=" << rep.checks_run << " violations=" << rep.violations
             << " min_gap=" << rep.min_gap << " sharp max|gap|=" << max_gap << " ("
             << elapsed << " s)";
  out.require(rep.instances == 1000, "1000 instances");
  out.require(rep.violations == 0, "no violations");
  out.require(rep.min_gap >= -1e-9, "gap >= -1e-9");
  out.require(max_gap <= 1e-8, "sharp family |gap| <= 1e-8 on the 9-point grid");
  out.require(elapsed < 30.0, "runtime < 30 s");
  return out;
}

//---------------------------------------------------------------------------
// 5. beamsplitter joint measurement
//---------------------------------------------------------------------------
Outcome criterion5() {
  Outcome out;
  FockSpace space(40);
  const double pi = 3.14159265358979323846;
  double worst_var = 0.0, worst_prod = 0.0;
  for (double theta : {pi / 8.0, pi / 6.0, pi / 4.0, pi / 3.0}) {
    JointQuality j = joint_quality(theta, space);
    const double expect = 0.5 * std::tan(theta) * std::tan(theta);
    worst_var = std::max(worst_var, std::abs(j.sigma_b * j.sigma_b - expect));
    worst_prod = std::max(worst_prod, std::abs(j.product - 0.5));
  }
  out.detail << "max |Sigma_B^2 - tan^2/2| = " << worst_var
             << ", max |product - 1/2| = " << worst_prod;
  out.require(worst_var <= 1e-6, "Sigma_B^2 = tan^2(theta)/2 within 1e-6");
  out.require(worst_prod <= 1e-6, "Sigma_B Sigma_Btilde = 0.5 +- 1e-6");
  return out;
}

//---------------------------------------------------------------------------
// 6. classical coding floors
//---------------------------------------------------------------------------
Outcome criterion6() {
  Outcome out;
  CodingBounds b = coding_bounds(2);
  out.require(b.cs_bound == (3.0 - std::sqrt(5.0)) / 4.0, "cs bound exact");
  out.require(b.clone_bound == 1.0 / 3.0, "clone bound exact");

  // a gallery of qubit coding schemes; none may beat the no-cloning floor
  auto projective = [](const CMat& basis) {
    FinitePovm povm;
    povm.dim = 2;
    povm.elements = {basis.col(0) * basis.col(0).adjoint(),
                     basis.col(1) * basis.col(1).adjoint()};
    povm.labels = {1.0, -1.0};
    std::vector<DensityMatrix> preps = {DensityMatrix(povm.elements[0]),
                                        DensityMatrix(povm.elements[1])};
    return std::pair<KrausChannel, KrausChannel>(povm_coding_channel(povm),
                                                 preparation_channel(preps));
  };

  double worst = 1.0;
  // sigma_z and sigma_x readouts with eigenstate re-preparation
  CMat zbasis = identity(2);
  CMat xbasis = (CMat(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0);
  for (const CMat& basis : {zbasis, xbasis}) {
    auto [c, d] = projective(basis);
    worst = std::min(worst, coding_imperfection(c, d));
  }

  // tetrahedral (SIC) POVM with pretty-good re-preparation
  {
    Eigen::Vector3d dirs[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    FinitePovm povm;
    povm.dim = 2;
    std::vector<DensityMatrix> preps;
    for (auto& v : dirs) {
      Eigen::Vector3d n = v.normalized();
      CMat e = 0.25 * (identity(2) + n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z());
      povm.elements.push_back(e);
      povm.labels.push_back(static_cast<double>(povm.labels.size()));
      preps.push_back(DensityMatrix(CMat(2.0 * e)));
    }
    povm.validate();
    worst = std::min(worst, coding_imperfection(povm_coding_channel(povm),
                                                preparation_channel(preps)));
  }

  // randomized POVMs with matched re-preparations
  for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
    Rng rng(seed);
    std::vector<CMat> raw;
    CMat s = CMat::Zero(2, 2);
    for (int k = 0; k < 3; ++k) {
      CMat m(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
      raw.push_back(m * m.adjoint());
      s += raw.back();
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(s);
    CMat isqrt = CMat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      isqrt += (1.0 / std::sqrt(es.eigenvalues()(i))) * es.eigenvectors().col(i) *
               es.eigenvectors().col(i).adjoint();
    FinitePovm povm;
    povm.dim = 2;
    std::vector<DensityMatrix> preps;
    for (int k = 0; k < 3; ++k) {
      CMat e = isqrt * raw[k] * isqrt;
      povm.elements.push_back(e);
      povm.labels.push_back(k);
      preps.push_back(DensityMatrix(CMat(e / e.trace().real())));
    }
    povm.validate();
    worst = std::min(worst, coding_imperfection(povm_coding_channel(povm),
                                                preparation_channel(preps)));
  }

  out.detail << "best coding imperfection over the scheme gallery = " << worst
             << " (floor 1/3)";
  out.require(worst >= 1.0 / 3.0 - 1e-9, "coding imperfection >= 1/3 - 1e-9");
  return out;
}

//---------------------------------------------------------------------------
// 7. LAN Monte Carlo risks
//---------------------------------------------------------------------------
Outcome criterion7() {
  Outcome out;
  lan::EstimationConfig cfg;
  cfg.n = 100000;
  cfg.trials = 100000;
  cfg.seed = 4711;
  cfg.mu0 = 0.9;

  auto timed = [&](lan::LossKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    lan::RiskReport r = lan::run_trials(cfg, kind);
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 60.0, "runtime < 60 s per configuration");
    return r;
  };

  lan::RiskReport tr9 = timed(lan::LossKind::trace);
  out.detail << "mu=.9: trace " << tr9.mean_n_risk << "+-" << tr9.std_error;
  out.require(std::abs(tr9.mean_n_risk - 3.96) <= 3.0 * tr9.std_error,
              "trace risk within 3 SE of 3.96");

  lan::RiskReport fid = timed(lan::LossKind::fidelity);
  out.detail << ", fidelity " << fid.mean_n_risk << "+-" << fid.std_error;
  out.require(std::abs(fid.mean_n_risk - 1.15) <= 3.0 * fid.std_error,
              "fidelity risk within 3 SE of 1.15");

  cfg.mu0 = 0.75;
  lan::RiskReport tr75 = timed(lan::LossKind::trace);
  out.detail << "; mu=.75: trace " << tr75.mean_n_risk << "+-" << tr75.std_error;
  out.require(std::abs(tr75.mean_n_risk - 3.75) <= 3.0 * tr75.std_error,
              "trace risk within 3 SE of 3.75");

  cfg.mu0 = 0.9;
  cfg.mode = lan::SamplingMode::exact_block;
  lan::RiskReport blk = timed(lan::LossKind::trace);
  const double se = std::hypot(tr9.std_error, blk.std_error);
  out.detail << "; block " << blk.mean_n_risk << "+-" << blk.std_error;
  out.require(std::abs(blk.mean_n_risk - tr9.mean_n_risk) <= 3.0 * se,
              "exact-block within 3 combined SE of gaussian");
  return out;
}

//---------------------------------------------------------------------------
// 8. stage-1 Hoeffding property
//---------------------------------------------------------------------------
Outcome criterion8() {
  Outcome out;
  const long n = 10000;
  const double kappa = 0.1, eps = 0.15;
  const double n_tilde = std::pow(static_cast<double>(n), 1.0 - kappa);
  const double c = std::pow(static_cast<double>(n), 2.0 * eps - 1.0);
  const double bound = 6.0 * std::exp(-0.5 * n_tilde * c);
  DensityMatrix rho = DensityMatrix::from_bloch(0, 0, 0);
  const Eigen::Vector3d r_true = rho.bloch();
  const int reps = 10000;
  int miss = 0;
  for (int rep = 0; rep < reps; ++rep) {
    lan::Stage1Result s = lan::stage1_estimate(n, kappa, rho, 60000 + rep);
    if ((s.rho_tilde.bloch() - r_true).squaredNorm() > 3.0 * c) ++miss;
  }
  const double freq = static_cast<double>(miss) / reps;
  out.detail << "miss frequency " << freq << " vs bound " << bound;
  out.require(freq <= bound, "empirical misses below the Hoeffding bound");
  return out;
}

//---------------------------------------------------------------------------
// 9. resonance fluorescence circle identity
//---------------------------------------------------------------------------
Outcome criterion9() {
  Outcome out;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    const double d = dynamics::rf_infidelity_bound(t);
    const double dist = dynamics::rf_disturbance(t);
    worst = std::max(worst,
                     std::abs((0.5 - d) * (0.5 - d) + (0.5 - dist) * (0.5 - dist) - 0.25));
  }
  out.detail << "max circle defect on t in [0,10] = " << worst;
  out.require(worst <= 1e-12, "identity within 1e-12");
  return out;
}

//---------------------------------------------------------------------------
// 10. property suites (compact rerun; the full suites run under ctest)
//---------------------------------------------------------------------------
Outcome criterion10() {
  Outcome out;

  // operator Cauchy-Schwarz PSD residuals
  Rng rng(1412);
  double worst_cs = 0.0;
  for (int rep = 0; rep < 60; ++rep) {
    KrausChannel t = random_channel(3, 2, 2, 7000 + rep);
    CMat x(3, 3), y(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        x(i, j) = cplx(rng.normal(), rng.normal());
        y(i, j) = cplx(rng.normal(), rng.normal());
      }
    CMat xy = sesquilinear_form(t, x, y);
    CMat gap = op_norm(sesquilinear_form(t, y, y)) * sesquilinear_form(t, x, x) -
               xy * xy.adjoint();
    EigH e = eig_hermitian(HermitianOp(gap, 1e-7));
    worst_cs = std::min(worst_cs, e.values(e.values.size() - 1));
  }
  out.detail << "min CS eigenvalue " << worst_cs;
  out.require(worst_cs > -1e-9, "Cauchy-Schwarz PSD residual");

  // unitality and Choi positivity of generated channels
  double worst_choi = 0.0, worst_unital = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    KrausChannel t = random_channel(2 + rep % 3, 2, 1 + rep % 3, 8200 + rep);
    CMat s = CMat::Zero(2, 2);
    for (const CMat& k : t.kraus()) s += k.adjoint() * k;
    worst_unital = std::max(worst_unital, op_norm(s - identity(2)));
    EigH e = eig_hermitian(HermitianOp(choi_matrix(t), 1e-8));
    worst_choi = std::min(worst_choi, e.values(e.values.size() - 1));
  }
  out.detail << ", unitality defect " << worst_unital << ", min Choi " << worst_choi;
  out.require(worst_unital <= 1e-10, "unitality");
  out.require(worst_choi > -1e-9, "Choi positivity");

  // density normalization
  double worst_mass = 0.0;
  for (double t : {0.7, 2.513, 8.0}) {
    const double mass =
        integrate([&](double y) { return pointer::density_q(y, t, 0.6, -0.3); }, -10, 10, 1e-11)
            .value;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
  }
  out.detail << ", density mass defect " << worst_mass;
  out.require(worst_mass <= 1e-10, "density normalization");

  // determinism by seed
  lan::EstimationConfig cfg;
  cfg.n = 10000;
  cfg.trials = 2000;
  cfg.seed = 99;
  lan::RiskReport a = lan::run_trials(cfg, lan::LossKind::trace);
  lan::RiskReport b = lan::run_trials(cfg, lan::LossKind::trace);
  cfg.threads = 3;
  lan::RiskReport c = lan::run_trials(cfg, lan::LossKind::trace);
  out.require(a.mean_n_risk == b.mean_n_risk && a.mean_n_risk == c.mean_n_risk,
              "determinism by seed across worker counts");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "pointer optimization constants", criterion1},
      {2, "naive pointer qualities", criterion2},
      {3, "closed forms vs quadrature oracle", criterion3},
      {4, "random bound audit + sharp equality sweep", criterion4},
      {5, "beamsplitter joint measurement", criterion5},
      {6, "classical coding floors", criterion6},
      {7, "LAN Monte Carlo risks", criterion7},
      {8, "stage-1 Hoeffding property", criterion8},
      {9, "resonance fluorescence circle identity", criterion9},
      {10, "property suites", criterion10},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s  criterion %2d: %s -- %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.title, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
