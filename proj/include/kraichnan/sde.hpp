#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kraichnan/symbol.hpp"

namespace kraichnan {

struct SdeConfig {
  SymbolParams params;
  double dt_base = 1e-2;
  double t_max = 1.0;
  double adapt_floor = 1e-6;
  std::uint64_t seed = 1;
  int paths = 1000;
  int workers = 0;       // 0: OpenMP default
  int metric_split_l = -1;  // block split for sup_distance; -1: all blocks rough

  SdeConfig(SymbolParams p) : params(p) {}

  void validate() const {
    if (!(dt_base > 0)) throw std::invalid_argument("SdeConfig: dt_base <= 0");
    if (!(adapt_floor > 0 && adapt_floor <= dt_base))
      throw std::invalid_argument("SdeConfig: adapt_floor out of range");
    if (paths < 1) throw std::invalid_argument("SdeConfig: paths < 1");
    if (!(t_max > 0)) throw std::invalid_argument("SdeConfig: t_max <= 0");
  }

  int split_l() const { return metric_split_l < 0 ? params.n - 1 : metric_split_l; }
};

using Observable = std::function<double(const Vec&)>;

/// Multi-component occupation accumulator: add() is called once per step
/// with the pre-step state (left-endpoint rule) and must add its dt-weighted
/// contributions into acc[0..size).
struct VectorObservable {
  int size = 1;
  std::function<void(const Vec& state, double t, double dt, double* acc)> add;
};

/// A reproducible set of simulated trajectories.  Identical (config, seed)
/// gives bit-identical ensembles regardless of worker count.
struct PathEnsemble {
  Mat endpoints;                    // dim x paths
  std::vector<Mat> occupation;      // per observable: size x paths
  std::vector<double> sup_distance; // per path, metric_surrogate from start
  std::vector<std::uint8_t> flagged;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;

  int paths() const { return static_cast<int>(sup_distance.size()); }
  int flagged_count() const;
};

/// Ito drift of the divergence-form generator: b_j = sum_i d_i A_{ij}.
/// The column divergence of the structure function vanishes, so this is
/// zero up to rounding; it is kept as the finite-difference-checked
/// contraction of the analytic symbol gradient.
Vec drift(const Configuration& x, const SymbolParams& params);

/// Symmetric PSD root S with S S^T = 2 sigma(M_n)(x), eigenvalues clamped at 0.
Mat noise_factor(const Configuration& x, const SymbolParams& params);

/// dt = clamp(dt_base * min(1, dist(x, Dgn)^{2-xi}), adapt_floor, dt_base).
double adaptive_dt(const Configuration& x, const SdeConfig& cfg);

/// Euler-Maruyama ensemble with per-path counter-based RNG streams and
/// left-endpoint occupation sums.  Throws if more than 1% of paths go
/// non-finite.
PathEnsemble simulate_ensemble(const Configuration& x0, const SdeConfig& cfg,
                               const std::vector<VectorObservable>& observables);
PathEnsemble simulate_ensemble(const Configuration& x0, const SdeConfig& cfg,
                               const std::vector<Observable>& observables);

/// Serial reference implementation; must match simulate_ensemble bitwise.
PathEnsemble simulate_ensemble_serial(const Configuration& x0, const SdeConfig& cfg,
                                      const std::vector<VectorObservable>& observables);
PathEnsemble simulate_ensemble_serial(const Configuration& x0, const SdeConfig& cfg,
                                      const std::vector<Observable>& observables);

struct TailEstimate {
  double p = 0.0;
  double stderr_ = 0.0;
};

/// Fraction of paths whose running sup of metric_surrogate from the start
/// point reached mu, with binomial stderr.
TailEstimate exit_tail_from(const PathEnsemble& e, double mu);

/// Convenience wrapper: simulate from y for horizon t and report the tail.
TailEstimate exit_tail_probability(const Configuration& y, double t, double mu,
                                   SdeConfig cfg);

}  // namespace kraichnan
