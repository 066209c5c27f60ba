#include "kraichnan/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kraichnan {

FitResult fit_exponent(const std::vector<FitPoint>& series) {
  if (series.size() < 4)
    throw std::invalid_argument("fit_exponent: need at least 4 points");
  const int m = static_cast<int>(series.size());
  std::vector<double> lx(m), ly(m), w(m);
  for (int i = 0; i < m; ++i) {
    if (!(series[i].abscissa > 0.0) || !(series[i].value > 0.0))
      throw std::invalid_argument("fit_exponent: nonpositive data");
    lx[i] = std::log(series[i].abscissa);
    ly[i] = std::log(series[i].value);
    // relative error of the value is the absolute error of its log
    double rel = series[i].stderr_ > 0.0 ? series[i].stderr_ / series[i].value : 0.0;
    w[i] = rel > 0.0 ? 1.0 / (rel * rel) : -1.0;  // -1: fill in below
  }
  // unweighted points get the median weight so mixed inputs stay sane
  std::vector<double> pos;
  for (double v : w)
    if (v > 0.0) pos.push_back(v);
  double fill = 1.0;
  if (!pos.empty()) {
    std::sort(pos.begin(), pos.end());
    fill = pos[pos.size() / 2];
  }
  for (double& v : w)
    if (v < 0.0) v = fill;

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
    sxx += w[i] * lx[i] * lx[i];
    sxy += w[i] * lx[i] * ly[i];
  }
  double det = sw * sxx - sx * sx;
  if (!(det > 0.0))
    throw std::invalid_argument("fit_exponent: degenerate abscissae");
  FitResult out;
  out.slope = (sw * sxy - sx * sy) / det;
  out.intercept = (sxx * sy - sx * sxy) / det;

  double ss_res = 0, ss_tot = 0, ybar = sy / sw;
  for (int i = 0; i < m; ++i) {
    double r = ly[i] - (out.intercept + out.slope * lx[i]);
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (ly[i] - ybar) * (ly[i] - ybar);
  }
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  double dof = std::max(1, m - 2);
  out.stderr_ = std::sqrt(std::max(0.0, ss_res / dof) * sw / det);
  auto [lo, hi] = std::minmax_element(series.begin(), series.end(),
                                      [](const FitPoint& a, const FitPoint& b) {
                                        return a.abscissa < b.abscissa;
                                      });
  out.window_lo = lo->abscissa;
  out.window_hi = hi->abscissa;
  return out;
}

}  // namespace kraichnan
