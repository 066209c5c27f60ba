#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kraichnan/estimators.hpp"

namespace kraichnan {

/// Radial, nonnegative, compactly supported forcing covariance C(x1-x2).
struct ForcingSpec {
  enum class Kind { UnitBall, SmoothBump };
  Kind kind = Kind::UnitBall;
  double radius = 1.0;

  double operator()(double r) const;
  RadialForcing radial() const;
};

enum class F2Mode { Oracle, Mc };

/// F2(|y1-y2|): exact radial quadrature in Oracle mode, occupation-time
/// Monte Carlo (green_apply on M2) in Mc mode.
ValueWithError f2_at(const Vec& y1, const Vec& y2, const ForcingSpec& forcing,
                     F2Mode mode, SdeConfig cfg);

/// Correlator evaluator for the level below the current recursion step.
/// Receives the complementary points as columns of a d x k matrix.
using CorrelatorFn = std::function<double(const Mat& points)>;

/// The exact F2 as a CorrelatorFn (tabulated once, then O(1) per call).
CorrelatorFn f2_oracle_evaluator(const ForcingSpec& forcing,
                                 const SymbolParams& params);

struct PairTerm {
  int i, j;          // 0-based pair indices into the point list
  double value;      // Green term for integrand F_{2n-2}(complement) C(y_i-y_j)
  double stderr_;
};

struct CorrelatorResult {
  double value = 0.0;
  double stderr_ = 0.0;
  double tail_bound = 0.0;
  std::vector<PairTerm> terms;
};

/// One step of the stationary recursion: sum over pairs (i,j) of the Green
/// operator of M_{2n} applied to F_{2n-2}(complement) * C(y_i - y_j), all
/// pair terms estimated on a single shared ensemble.  2n <= depth_guard <= 6.
CorrelatorResult f2n_recursive(const std::vector<Vec>& y,
                               const ForcingSpec& forcing, SdeConfig cfg,
                               int depth_guard, const CorrelatorFn& lower);

/// The 4-point case with the exact F2 oracle inside.
CorrelatorResult f4_at(const std::vector<Vec>& y, const ForcingSpec& forcing,
                       SdeConfig cfg);

/// All perfect matchings of {0..m-1}; (m-1)!! of them.
std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int m);

/// Sum over perfect matchings of prod (1 + |y_i - y_j|)^{2-xi-d}.
double pair_bound(const std::vector<Vec>& y, const SymbolParams& params);

}  // namespace kraichnan
