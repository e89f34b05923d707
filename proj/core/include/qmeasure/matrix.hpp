#ifndef QMEASURE_MATRIX_HPP
#define QMEASURE_MATRIX_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmeasure/config.hpp"

namespace qmeasure {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

//=========================================================================
// Hermitian / density wrappers
//=========================================================================

// Self-adjoint operator on a finite-dimensional space. Construction
// symmetrizes (h + h^dag)/2 when the defect is within the relative
// tolerance and rejects otherwise.
class HermitianOp {
 public:
  explicit HermitianOp(const CMat& m, double herm_rel = tolerances().herm_rel);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMat& matrix() const { return mat_; }

 private:
  CMat mat_;
};

// Positive unit-trace operator (quantum state).
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMat& m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMat& matrix() const { return mat_; }

  static DensityMatrix pure(const CVec& psi);
  static DensityMatrix from_bloch(double x, double y, double z);
  Eigen::Vector3d bloch() const;  // qubit only

 private:
  CMat mat_;
};

//=========================================================================
// Core operations
//=========================================================================

// Kronecker product, dims multiply.
CMat tensor(const CMat& a, const CMat& b);

// Trace over the discarded tensor factors. `dims` are the factor dimensions
// (their product must equal the matrix dimension), `keep` the sorted indices
// of factors to retain.
CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep);

struct EigH {
  RVec values;   // descending
  CMat vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

// Dense Hermitian eigendecomposition (backward stable; dimension cap applies).
EigH eig_hermitian(const HermitianOp& h);
EigH eig_hermitian(const CMat& m);  // symmetrizes within tolerance first

double op_norm(const CMat& m);     // largest singular value
double trace_norm(const CMat& m);  // sum of singular values

// Half trace norm of the difference; for states this is the worst-case
// difference in probability of an event.
double trace_distance(const CMat& a, const CMat& b);

CMat commutator(const CMat& a, const CMat& b);

CMat dagger(const CMat& m);

// Positive part: sum over positive eigenvalues of lambda_i v_i v_i^dag.
CMat positive_part(const CMat& hermitian);
double positive_part_trace(const CMat& hermitian);

//=========================================================================
// Small constructors
//=========================================================================

CMat identity(int dim);
CMat pauli_x();
CMat pauli_y();
CMat pauli_z();
CMat sigma_plus();   // |0><1|
CMat sigma_minus();  // |1><0|
CVec basis_vector(int dim, int k);

}  // namespace qmeasure

#endif
