#pragma once

#include <functional>
#include <vector>

#include "kraichnan/fit.hpp"
#include "kraichnan/sde.hpp"

namespace kraichnan {

struct ValueWithError {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Regular evaluation grid: shape[j] points per axis, cell centers.
struct GridSpec {
  Vec lo, hi;
  std::vector<int> shape;

  void validate() const;
  int points() const;
  double cell_volume() const;
  Vec center(int flat_index) const;
};

struct DensityGrid {
  std::vector<Vec> centers;
  Vec bandwidth;                // per-axis kernel widths
  std::vector<double> values;   // estimated density, >= 0
  std::vector<double> stderr_;  // per-point, path-resampling
};

struct GreenSample {
  double value = 0.0;         // E int_0^T g(X_s) ds
  double stderr_ = 0.0;
  double t_truncation = 0.0;  // T
  double tail_bound = 0.0;    // extrapolated remainder over (T, infinity)
};

/// Occupation density binned over radial shells |y - x0| in [edges[k], edges[k+1]).
struct RadialDensity {
  std::vector<double> r_centers;  // geometric midpoints
  std::vector<double> values;     // occupation / shell volume; NaN if excluded
  std::vector<double> stderr_;
};

/// Radial forcing profile chi(|x|), nonnegative, supported in [0, support_radius].
struct RadialForcing {
  std::function<double(double)> chi;
  double support_radius = 1.0;
};

/// Kernel-density estimate of the law of X_t started at x0.  Bandwidth is the
/// per-axis rule-of-thumb sigma_j (4/((dim+2)N))^{1/(dim+4)}; stderr by
/// deterministic path resampling.  Throws if fewer than 100 endpoints land
/// near the grid.
DensityGrid heat_kernel_density(const Configuration& x0, double t,
                                SdeConfig cfg, const GridSpec& grid);

/// Ensemble mean of f(X_t); a contraction: |result| <= sup |f|.
ValueWithError semigroup_apply(const Observable& f, const Configuration& x0,
                               double t, SdeConfig cfg);

/// Occupation-time estimate of (M^{-1} g)(x0) truncated at cfg.t_max, with a
/// power-law tail extrapolation fitted over the last decade of t.  Throws if
/// the fitted tail exponent is >= -1 (non-integrable setup).
GreenSample green_apply(const Observable& g, const Configuration& x0,
                        SdeConfig cfg);

/// Time-integrated occupation density on radial shells about x0.  Shells whose
/// outer edge lies inside the cone exclusion |y - x0| <= rho_exclusion*|x0|
/// are reported as NaN.
RadialDensity green_density(const Configuration& x0,
                            const std::vector<double>& shell_edges,
                            SdeConfig cfg, double rho_exclusion = 0.25);

/// Exact solution of the radial two-point equation:
/// F(r) = int_r^inf rho^{1-d-xi} (int_0^rho s^{d-1} chi(s) ds) drho,
/// by adaptive quadrature on [r, R] plus the closed-form tail.
double radial_f2_oracle(double r, const RadialForcing& chi,
                        const SymbolParams& params);

/// Fast tabulated form of radial_f2_oracle: exact power tail for
/// r >= support_radius, dense linear interpolation below it.
class F2Interpolant {
 public:
  F2Interpolant(const RadialForcing& chi, const SymbolParams& params,
                int table_points = 4096);
  double operator()(double r) const;

 private:
  std::vector<double> table_;
  double step_;
  double support_;
  double tail_coeff_;  // F(r) = tail_coeff_ * r^{2-d-xi} for r >= support
  double tail_exp_;
};

/// Two-branch comparison envelope for a single d-dimensional block.
double envelope_block(double t, const Vec& x, const Vec& y, double C,
                      const SymbolParams& params);

/// Blockwise product envelope: rough branch on the first l blocks, Gaussian
/// on the rest.  Used only for domination checks, never as an estimator.
double estimate_E(double t, const Vec& x, const Vec& y, double C, int l,
                  const SymbolParams& params);

/// Time integral int_0^inf estimate_E(t,...) dt by adaptive quadrature.
double estimate_E_integrated(const Vec& x, const Vec& y, double C, int l,
                             const SymbolParams& params);

}  // namespace kraichnan
