#include "qmeasure/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmeasure/rng.hpp"

namespace qmeasure {

BoundCheck joint_measurement_check(const KrausChannel& T, const HermitianOp& B,
                                   const HermitianOp& B_tilde, double tol) {
  if (op_norm(commutator(B.matrix(), B_tilde.matrix())) >
      tolerances().commute * std::max(1.0, op_norm(B.matrix()) * op_norm(B_tilde.matrix())))
    throw std::invalid_argument("joint_measurement_check: pointers do not commute");
  BoundCheck c;
  c.name = "joint_measurement";
  const double s1 = std::sqrt(max_added_variance(T, B));
  const double s2 = std::sqrt(max_added_variance(T, B_tilde));
  c.lhs = s1 * s2;
  c.rhs = 0.5 * op_norm(commutator(T.apply(B.matrix()), T.apply(B_tilde.matrix())));
  c.gap = c.lhs - c.rhs;
  c.satisfied = c.gap >= -tol;
  return c;
}

namespace {

BoundCheck heisenberg_from_parts(double sigma, double delta, double d_center,
                                 double tol) {
  BoundCheck c;
  c.name = "heisenberg_principle";
  c.lhs = sigma;
  if (delta < 1e-12) {
    c.rhs = std::numeric_limits<double>::infinity();
    c.note = "Delta = 0: nontrivial transfer impossible";
    c.satisfied = d_center <= 1e-8;
    c.gap = c.satisfied ? 0.0 : -d_center;
    return c;
  }
  c.rhs = d_center * (0.5 - delta) / std::sqrt(delta * (1.0 - delta));
  c.gap = c.lhs - c.rhs;
  c.satisfied = c.gap >= -tol;
  return c;
}

}  // namespace

BoundCheck heisenberg_check(const KrausChannel& T, int sys_dim, int anc_dim,
                            const HermitianOp& B_ancilla, double tol) {
  const CMat pointer = tensor(identity(sys_dim), B_ancilla.matrix());
  const double sigma = std::sqrt(max_added_variance(T, HermitianOp(pointer)));
  KrausChannel R = restrict_to_system(T, sys_dim, anc_dim);
  const double delta = max_disturbance(R);
  const double dc = distance_to_center(HermitianOp(T.apply(pointer)));
  return heisenberg_from_parts(sigma, delta, dc, tol);
}

BoundCheck info_disturbance_check(double delta, double disturbance, double tol) {
  BoundCheck c;
  c.name = "info_disturbance";
  c.lhs = (0.5 - delta) * (0.5 - delta) + (0.5 - disturbance) * (0.5 - disturbance);
  c.rhs = 0.25;
  if (delta < 0.0 || delta > 0.5 || disturbance < 0.0 || disturbance > 0.5) {
    c.note = "hypothesis void";
    c.satisfied = true;
    c.gap = 0.0;
    return c;
  }
  c.gap = c.rhs - c.lhs;
  c.satisfied = c.gap >= -tol;
  return c;
}

CodingBounds coding_bounds(int dim) {
  if (dim < 2) throw std::invalid_argument("coding_bounds: dim must be >= 2");
  CodingBounds b;
  b.cs_bound = (3.0 - std::sqrt(5.0)) / 4.0;
  b.clone_bound = static_cast<double>(dim - 1) / (dim + 1);
  return b;
}

BoundCheck collapse_check(const KrausChannel& T, int sys_dim, int anc_dim,
                          const HermitianOp& B_ancilla, const CVec& psi_x,
                          const CVec& psi_y, double x, double y, double tol) {
  if (std::abs(x - y) < 1e-10)
    throw std::invalid_argument("collapse_check: degenerate eigenvalues");
  BoundCheck c;
  c.name = "collapse";
  const CMat pointer = tensor(identity(sys_dim), B_ancilla.matrix());
  const double sigma = std::sqrt(max_added_variance(T, HermitianOp(pointer)));
  KrausChannel R = restrict_to_system(T, sys_dim, anc_dim);
  c.lhs = coherence(R, psi_x, psi_y);
  const double s = sigma / std::abs(x - y);
  c.rhs = s / std::sqrt(1.0 + 4.0 * s * s);
  c.gap = c.rhs - c.lhs;
  c.satisfied = c.gap >= -tol;
  return c;
}

BoundCheck nondestructive_collapse_check(const KrausChannel& T, int sys_dim,
                                         int anc_dim, const CVec& psi_i,
                                         const CVec& psi_j, double delta,
                                         double tol, double nondestructive_tol) {
  BoundCheck c;
  c.name = "nondestructive_collapse";
  if (delta < 0.0 || delta > 0.5) {
    c.note = "hypothesis void";
    c.satisfied = true;
    return c;
  }
  KrausChannel R = restrict_to_system(T, sys_dim, anc_dim);
  for (const CVec* v : {&psi_i, &psi_j}) {
    CMat rho = (*v) * v->adjoint();
    if (trace_distance(R.apply_dual(rho), rho) > nondestructive_tol)
      throw std::invalid_argument("nondestructive_collapse_check: channel moves an eigenstate");
  }
  c.lhs = coherence(R, psi_i, psi_j);
  c.rhs = std::sqrt(delta * (1.0 - delta));
  c.gap = c.rhs - c.lhs;
  c.satisfied = c.gap >= -tol;
  return c;
}

DecoherenceEstimate decoherence_estimate(const CVec& theta0, const CVec& theta1,
                                         const HermitianOp& A, const HermitianOp& B,
                                         double tol) {
  DecoherenceEstimate e;
  const CMat& a = A.matrix();
  const CMat& b = B.matrix();
  const double na = op_norm(a), nb = op_norm(b);
  e.delta_comm = (na > 0 && nb > 0) ? op_norm(commutator(a, b)) / (na * nb) : 0.0;
  CVec t0 = theta0 / theta0.norm();
  CVec t1 = theta1 / theta1.norm();
  e.b0 = (t0.adjoint() * b * t0)(0).real();
  e.b1 = (t1.adjoint() * b * t1)(0).real();
  const double m0 = (t0.adjoint() * b * b * t0)(0).real();
  const double m1 = (t1.adjoint() * b * b * t1)(0).real();
  e.sigma0 = std::sqrt(std::max(0.0, m0 - e.b0 * e.b0));
  e.sigma1 = std::sqrt(std::max(0.0, m1 - e.b1 * e.b1));
  if (std::abs(e.b0 - e.b1) < 1e-12)
    throw std::invalid_argument("decoherence_estimate: pointer means coincide");
  e.measured = std::abs((t0.adjoint() * a * t1)(0));
  e.bound = (e.delta_comm * nb + e.sigma0 + e.sigma1) / std::abs(e.b0 - e.b1) * na;
  e.satisfied = e.measured <= e.bound + tol;
  return e;
}

SharpFamily sharp_family(double p) {
  if (p < 0.0 || p >= 0.5)
    throw std::invalid_argument("sharp_family: p must lie in [0, 1/2)");
  CMat vp = CMat::Zero(2, 2), vm = CMat::Zero(2, 2);
  vp(0, 0) = std::sqrt(1.0 - p);
  vp(1, 1) = std::sqrt(p);
  vm(0, 0) = std::sqrt(p);
  vm(1, 1) = std::sqrt(1.0 - p);
  KrausChannel T = instrument_channel({{vp}, {vm}});
  CMat sign = CMat::Zero(2, 2);
  sign(0, 0) = 1.0;
  sign(1, 1) = -1.0;
  HermitianOp outcome(tensor(identity(2), sign));
  HermitianOp pointer(tensor(identity(2), sign / (1.0 - 2.0 * p)));
  return SharpFamily{std::move(T), pointer, outcome, p};
}

namespace {

HermitianOp random_hermitian(int dim, Rng& rng) {
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return HermitianOp(0.5 * (m + m.adjoint()), 1.0);
}

CMat random_unitary(int dim, Rng& rng) {
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<CMat> qr(m);
  return CMat(qr.householderQ());
}

void record(AuditReport& rep, BoundCheck c, const char* tag, double& min_gap) {
  ++rep.checks_run;
  if (c.note != "hypothesis void") min_gap = std::min(min_gap, c.gap);
  if (!c.satisfied) {
    ++rep.violations;
    c.name = std::string(tag) + ":" + c.name;
    if (rep.violating.size() < 16) rep.violating.push_back(std::move(c));
  }
}

}  // namespace

AuditReport run_random_audit(const std::vector<int>& sys_dims, int trials,
                             std::uint64_t seed, double tol) {
  AuditReport rep;
  double min_gap = std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t) + 1);
    const int d_sys = sys_dims[t % sys_dims.size()];
    const int d_anc = 2;
    ++rep.instances;

    KrausChannel T = random_channel(d_sys * d_anc, d_sys,
                                    1 + static_cast<int>(rng.next_u64() % 4),
                                    rng.next_u64());
    KrausChannel R = restrict_to_system(T, d_sys, d_anc);
    const double dist = max_disturbance(R);

    // joint measurement with a commuting pointer pair
    {
      CMat v = random_unitary(d_sys * d_anc, rng);
      RVec b1(d_sys * d_anc), b2(d_sys * d_anc);
      for (int i = 0; i < d_sys * d_anc; ++i) {
        b1(i) = rng.normal();
        b2(i) = rng.normal();
      }
      HermitianOp B(v * b1.asDiagonal() * v.adjoint());
      HermitianOp Bt(v * b2.asDiagonal() * v.adjoint());
      record(rep, joint_measurement_check(T, B, Bt, tol), "tjm", min_gap);
    }

    // Heisenberg principle and collapse with an ancilla pointer
    {
      HermitianOp B_anc = random_hermitian(d_anc, rng);
      const CMat pointer = tensor(identity(d_sys), B_anc.matrix());
      const double sigma = std::sqrt(max_added_variance(T, HermitianOp(pointer)));
      HermitianOp A(T.apply(pointer));
      record(rep, heisenberg_from_parts(sigma, dist, distance_to_center(A), tol),
             "hp", min_gap);

      EigH ea = eig_hermitian(A);
      if (ea.values(0) - ea.values(d_sys - 1) > 1e-6)
        record(rep, collapse_check(T, d_sys, d_anc, B_anc, ea.vectors.col(0),
                                   ea.vectors.col(d_sys - 1), ea.values(0),
                                   ea.values(d_sys - 1), tol),
               "offdiag", min_gap);
    }

    // information-disturbance with measured delta and the shared Delta
    {
      CMat sign = CMat::Zero(2, 2);
      sign(0, 0) = 1.0;
      sign(1, 1) = -1.0;
      HermitianOp pointer(tensor(identity(d_sys), sign));
      HermitianOp Ap(T.apply(pointer.matrix()));
      EigH eap = eig_hermitian(Ap);
      CMat asign = CMat::Zero(d_sys, d_sys);
      for (int i = 0; i < d_sys; ++i)
        asign += (eap.values(i) >= 0.0 ? 1.0 : -1.0) * eap.vectors.col(i) *
                 eap.vectors.col(i).adjoint();
      const double delta = measurement_infidelity(T, HermitianOp(asign), pointer);
      record(rep, info_disturbance_check(delta, dist, tol), "hpdel", min_gap);
    }

    // nondestructive collapse on a random diagonal instrument
    {
      CMat w = random_unitary(d_sys, rng);
      CMat d0 = CMat::Zero(d_sys, d_sys), d1 = CMat::Zero(d_sys, d_sys);
      for (int i = 0; i < d_sys; ++i) {
        // keep the infidelity below 1/2 so the hypothesis usually holds
        const double q = (i % 2 == 0) ? 0.55 + 0.43 * rng.uniform()
                                      : 0.02 + 0.43 * rng.uniform();
        const double ph0 = 6.283185307179586 * rng.uniform();
        const double ph1 = 6.283185307179586 * rng.uniform();
        d0(i, i) = std::sqrt(q) * std::exp(cplx(0.0, ph0));
        d1(i, i) = std::sqrt(1.0 - q) * std::exp(cplx(0.0, ph1));
      }
      KrausChannel Tn = instrument_channel({{w * d0 * w.adjoint()}, {w * d1 * w.adjoint()}});
      CMat sign = CMat::Zero(2, 2);
      sign(0, 0) = 1.0;
      sign(1, 1) = -1.0;
      HermitianOp pointer(tensor(identity(d_sys), sign));
      CMat asig = CMat::Zero(d_sys, d_sys);
      for (int i = 0; i < d_sys; ++i)
        asig += ((i % 2 == 0) ? 1.0 : -1.0) * w.col(i) * w.col(i).adjoint();
      const double delta = measurement_infidelity(Tn, HermitianOp(asig), pointer);
      record(rep,
             nondestructive_collapse_check(Tn, d_sys, 2, w.col(0), w.col(1), delta, tol),
             "gencol", min_gap);
    }
  }

  rep.min_gap = min_gap;
  rep.summary.push_back("instances=" + std::to_string(rep.instances) +
                        " checks=" + std::to_string(rep.checks_run) +
                        " violations=" + std::to_string(rep.violations));
  return rep;
}

std::vector<BoundCheck> sharp_equality_sweep(const std::vector<double>& p_grid) {
  std::vector<BoundCheck> out;
  for (double p : p_grid) {
    SharpFamily fam = sharp_family(p);
    CMat sign = CMat::Zero(2, 2);
    sign(0, 0) = 1.0;
    sign(1, 1) = -1.0;
    HermitianOp b_anc_scaled(sign / (1.0 - 2.0 * p));

    BoundCheck hp = heisenberg_check(fam.T, 2, 2, b_anc_scaled);
    hp.name = "sharp_hp(p=" + std::to_string(p) + ")";
    out.push_back(hp);

    const double delta =
        measurement_infidelity(fam.T, HermitianOp(pauli_z()), fam.outcome_sign);
    KrausChannel R = restrict_to_system(fam.T, 2, 2);
    const double dist = max_disturbance(R);
    BoundCheck hd = info_disturbance_check(delta, dist);
    hd.name = "sharp_hpdel(p=" + std::to_string(p) + ")";
    out.push_back(hd);

    BoundCheck col = collapse_check(fam.T, 2, 2, b_anc_scaled, basis_vector(2, 0),
                                    basis_vector(2, 1), 1.0, -1.0);
    col.name = "sharp_offdiag(p=" + std::to_string(p) + ")";
    out.push_back(col);

    BoundCheck gen = nondestructive_collapse_check(fam.T, 2, 2, basis_vector(2, 0),
                                                   basis_vector(2, 1), delta);
    gen.name = "sharp_gencol(p=" + std::to_string(p) + ")";
    out.push_back(gen);
  }
  return out;
}

}  // namespace qmeasure
