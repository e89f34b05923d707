#include "qmeasure/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmeasure {

namespace {

ScalarMin scan_then_refine(const std::function<double(double)>& f,
                           const std::vector<double>& grid, double x_tol) {
  int best = 0;
  std::vector<double> fv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fv[i] = f(grid[i]);
    if (fv[i] < fv[best]) best = static_cast<int>(i);
  }
  const int n = static_cast<int>(grid.size());
  const int il = std::max(0, best - 1);
  const int ir = std::min(n - 1, best + 1);
  ScalarMin m = golden_section(f, grid[il], grid[ir], x_tol);
  m.bracketed = (best > 0 && best < n - 1);

  // one parabolic polish through (x - h, x, x + h)
  const double h = std::max(x_tol, 1e-7 * (grid[ir] - grid[il]));
  const double f0 = f(m.x - h), f1 = m.value, f2 = f(m.x + h);
  const double denom = f0 - 2.0 * f1 + f2;
  if (denom > 0.0) {
    const double xq = m.x + 0.5 * h * (f0 - f2) / denom;
    if (xq > grid[il] && xq < grid[ir]) {
      const double fq = f(xq);
      if (fq < m.value) {
        m.x = xq;
        m.value = fq;
      }
    }
  }
  return m;
}

}  // namespace

ScalarMin golden_section(const std::function<double(double)>& f,
                         double a, double b, double x_tol) {
  if (b < a) std::swap(a, b);
  const double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  ScalarMin m;
  m.bracketed = true;
  if (f1 < f2) {
    m.x = x1;
    m.value = f1;
  } else {
    m.x = x2;
    m.value = f2;
  }
  return m;
}

ScalarMin minimize_scalar_logspaced(const std::function<double(double)>& f,
                                    double lo, double hi, int scan_points,
                                    double x_tol) {
  if (lo <= 0.0 || hi <= lo) throw std::invalid_argument("minimize_scalar_logspaced: bad range");
  std::vector<double> grid(scan_points);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < scan_points; ++i)
    grid[i] = std::exp(llo + (lhi - llo) * i / (scan_points - 1));
  return scan_then_refine(f, grid, x_tol);
}

ScalarMin minimize_scalar(const std::function<double(double)>& f,
                          double lo, double hi, int scan_points, double x_tol) {
  if (hi <= lo) throw std::invalid_argument("minimize_scalar: bad range");
  std::vector<double> grid(scan_points);
  for (int i = 0; i < scan_points; ++i)
    grid[i] = lo + (hi - lo) * i / (scan_points - 1);
  return scan_then_refine(f, grid, x_tol);
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step,
                             double f_tol, int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  NelderMeadResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    // order
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> f2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      f2[i] = fv[idx[i]];
    }
    pts.swap(p2);
    fv.swap(f2);

    if (std::abs(fv[n] - fv[0]) < f_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = centroid[j] + t * (pts[n][j] - centroid[j]);
      return x;
    };

    std::vector<double> xr = blend(-1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = blend(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
    } else {
      std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        pts[n] = xc;
        fv[n] = fc;
      } else {  // shrink toward best
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = pts[best];
  res.value = fv[best];
  res.iterations = iter;
  return res;
}

}  // namespace qmeasure
