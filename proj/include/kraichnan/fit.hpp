#pragma once

#include <vector>

namespace kraichnan {

/// A log-log regression: value ~ exp(intercept) * abscissa^slope.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_ = 0.0;   // standard error of the slope
  double r_squared = 0.0;
  double window_lo = 0.0;  // abscissa range actually used
  double window_hi = 0.0;
};

struct FitPoint {
  double abscissa;
  double value;
  double stderr_ = 0.0;  // of value; 0 means unweighted
};

/// Weighted least squares on log-log data.  Requires >= 4 points with
/// positive abscissae and values; deterministic.
FitResult fit_exponent(const std::vector<FitPoint>& series);

}  // namespace kraichnan
