#ifndef QMEASURE_OPTIMIZE_HPP
#define QMEASURE_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace qmeasure {

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
  bool bracketed = false;
};

// Pre-scan `f` on `scan_points` log-spaced points of [lo, hi], bracket the
// best one, then golden-section to `x_tol` followed by a single parabolic
// polish. Robust against the kink of a max() of two smooth curves.
ScalarMin minimize_scalar_logspaced(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    int scan_points = 200, double x_tol = 1e-8);

// Same with a linear pre-scan grid.
ScalarMin minimize_scalar(const std::function<double(double)>& f,
                          double lo, double hi,
                          int scan_points = 200, double x_tol = 1e-8);

// Golden-section on a known bracket [a, b].
ScalarMin golden_section(const std::function<double(double)>& f,
                         double a, double b, double x_tol = 1e-8);

// Derivative-free Nelder-Mead; returns best point found.
struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step,
                             double f_tol = 1e-10, int max_iter = 400);

}  // namespace qmeasure

#endif
