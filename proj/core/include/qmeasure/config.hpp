#ifndef QMEASURE_CONFIG_HPP
#define QMEASURE_CONFIG_HPP

#include <cstddef>

namespace qmeasure {

// All numerical tolerances live in one record. The defaults below are used
// everywhere unless a caller passes an explicit override; the CLI exposes a
// global scale factor on top of them.
struct Tolerances {
  double herm_rel = 1e-12;     // relative Hermiticity defect accepted at construction
  double psd = 1e-10;          // density matrices: eigenvalues >= -psd
  double trace = 1e-12;        // density matrices: |tr - 1| <= trace
  double unital = 1e-10;       // channels: ||sum K^dag K - 1|| <= unital
  double choi = 1e-9;          // complete positivity: Choi eigenvalues >= -choi
  double eig = 1e-10;          // eigendecomposition reconstruction / orthonormality
  double trunc = 1e-12;        // Fock truncation tail mass
  double commute = 1e-10;      // commuting-pointer precondition
  double spectrum_cluster = 1e-8;  // eigenvalues closer than this share an outcome
  double bound_check = 1e-9;   // slack allowed when auditing a theorem
  std::size_t eig_dim_cap = 4096;
  std::size_t infidelity_subset_cap = 16;  // |spectrum| <= 16 => 2^16 subsets
};

// Mutable process-wide tolerance record (set once at startup, e.g. by the CLI).
Tolerances& tolerances();

}  // namespace qmeasure

#endif
