#include "kraichnan/sde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kraichnan/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kraichnan {

int PathEnsemble::flagged_count() const {
  int c = 0;
  for (auto f : flagged) c += f;
  return c;
}

Vec drift(const Configuration& x, const SymbolParams& params) {
  if (params.xi <= 1.0 && degeneration_distance(x) == 0.0)
    throw std::domain_error("drift: evaluation on Dgn with xi <= 1");
  std::vector<Mat> grad = symbol_gradient(x, params);
  const int dim = x.dim();
  Vec b = Vec::Zero(dim);
  for (int k = 0; k < dim; ++k) b += grad[k].row(k).transpose();
  return b;
}

Mat noise_factor(const Configuration& x, const SymbolParams& params) {
  if (!x.flat().allFinite())
    throw std::invalid_argument("noise_factor: non-finite input");
  SymbolMatrix S = assemble_symbol(x, params);
  Eigen::SelfAdjointEigenSolver<Mat> es(2.0 * S.m);
  Vec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double adaptive_dt(const Configuration& x, const SdeConfig& cfg) {
  double dist = degeneration_distance(x);
  double dt = cfg.dt_base * std::min(1.0, std::pow(dist, 2.0 - cfg.params.xi));
  return std::clamp(dt, cfg.adapt_floor, cfg.dt_base);
}

namespace {

// Closed-form symmetric root of 2 d(x): eigenvalues 2|x|^xi along xhat and
// 2(1+xi/(d-1))|x|^xi across, so S = a I + (b - a) xhat xhat^T.
inline void apply_noise_n2(Vec& state, const Vec& z, double sqdt, int d, double xi) {
  double r2 = state.squaredNorm();
  if (r2 == 0.0) return;
  double r = std::sqrt(r2);
  double rxi = std::pow(r, xi);
  double a = std::sqrt(2.0 * (1.0 + xi / (d - 1)) * rxi);
  double b = std::sqrt(2.0 * rxi);
  double proj = state.dot(z) / r2;
  state *= 1.0 + sqdt * (b - a) * proj;
  state.noalias() += (sqdt * a) * z;
}

struct PathWorkspace {
  Vec state, z, noise;
  Eigen::SelfAdjointEigenSolver<Mat> solver;
  PathWorkspace(int dim)
      : state(dim), z(dim), noise(dim), solver(dim) {}
};

}  // namespace

static PathEnsemble run_ensemble(const Configuration& x0, const SdeConfig& cfg,
                                 const std::vector<VectorObservable>& observables,
                                 bool parallel) {
  cfg.validate();
  if (!x0.flat().allFinite())
    throw std::invalid_argument("simulate_ensemble: non-finite start");
  const SymbolParams& p = cfg.params;
  const int dim = x0.dim();
  const int nobs = static_cast<int>(observables.size());
  const int split_l = cfg.split_l();

  PathEnsemble ens;
  ens.endpoints = Mat::Zero(dim, cfg.paths);
  ens.occupation.resize(nobs);
  for (int o = 0; o < nobs; ++o) {
    if (observables[o].size < 1)
      throw std::invalid_argument("simulate_ensemble: observable size < 1");
    ens.occupation[o] = Mat::Zero(observables[o].size, cfg.paths);
  }
  ens.sup_distance.assign(cfg.paths, 0.0);
  ens.flagged.assign(cfg.paths, 0);
  ens.seed = cfg.seed;

  const bool fast_n2 = (p.n == 2);

  auto run_path = [&](int path, PathWorkspace& ws, Configuration& cur) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(path));
    cur.flat() = x0.flat();
    Vec& state = cur.flat();
    double t = 0.0;
    double supd = 0.0;
    while (t < cfg.t_max) {
      double dt = fast_n2 ? std::clamp(cfg.dt_base *
                                           std::min(1.0, std::pow(state.norm(),
                                                                  2.0 - p.xi)),
                                       cfg.adapt_floor, cfg.dt_base)
                          : adaptive_dt(cur, cfg);
      dt = std::min(dt, cfg.t_max - t);
      for (int o = 0; o < nobs; ++o)
        observables[o].add(state, t, dt, ens.occupation[o].col(path).data());
      double sqdt = std::sqrt(dt);
      for (int k = 0; k < dim; ++k) ws.z[k] = rng.next_normal();
      if (fast_n2) {
        apply_noise_n2(state, ws.z, sqdt, p.d, p.xi);
      } else {
        SymbolMatrix S = assemble_symbol(cur, p);
        ws.solver.compute(2.0 * S.m);
        Vec ev = ws.solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        ws.noise.noalias() =
            ws.solver.eigenvectors() *
            (ev.asDiagonal() * (ws.solver.eigenvectors().transpose() * ws.z));
        state.noalias() += sqdt * ws.noise;
      }
      if (!state.allFinite()) {
        ens.flagged[path] = 1;
        break;
      }
      double dsur = metric_surrogate(state, x0.flat(), split_l, p.d, p.xi);
      if (dsur > supd) supd = dsur;
      t += dt;
    }
    ens.endpoints.col(path) = state;
    ens.sup_distance[path] = supd;
  };

  if (parallel) {
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#pragma omp parallel
    {
      PathWorkspace ws(dim);
      Configuration cur(x0);
#pragma omp for schedule(dynamic, 64)
      for (int path = 0; path < cfg.paths; ++path) run_path(path, ws, cur);
    }
#else
    PathWorkspace ws(dim);
    Configuration cur(x0);
    for (int path = 0; path < cfg.paths; ++path) run_path(path, ws, cur);
#endif
  } else {
    PathWorkspace ws(dim);
    Configuration cur(x0);
    for (int path = 0; path < cfg.paths; ++path) run_path(path, ws, cur);
  }

  if (ens.flagged_count() > 0.01 * cfg.paths)
    throw std::runtime_error("simulate_ensemble: more than 1% of paths flagged");
  return ens;
}

static std::vector<VectorObservable> wrap_scalar(
    const std::vector<Observable>& observables) {
  std::vector<VectorObservable> out;
  out.reserve(observables.size());
  for (const Observable& f : observables)
    out.push_back({1, [f](const Vec& s, double, double dt, double* acc) {
                     acc[0] += f(s) * dt;
                   }});
  return out;
}

PathEnsemble simulate_ensemble(const Configuration& x0, const SdeConfig& cfg,
                               const std::vector<VectorObservable>& observables) {
  return run_ensemble(x0, cfg, observables, true);
}

PathEnsemble simulate_ensemble(const Configuration& x0, const SdeConfig& cfg,
                               const std::vector<Observable>& observables) {
  return run_ensemble(x0, cfg, wrap_scalar(observables), true);
}

PathEnsemble simulate_ensemble_serial(const Configuration& x0, const SdeConfig& cfg,
                                      const std::vector<VectorObservable>& observables) {
  return run_ensemble(x0, cfg, observables, false);
}

PathEnsemble simulate_ensemble_serial(const Configuration& x0, const SdeConfig& cfg,
                                      const std::vector<Observable>& observables) {
  return run_ensemble(x0, cfg, wrap_scalar(observables), false);
}

TailEstimate exit_tail_from(const PathEnsemble& e, double mu) {
  if (e.paths() == 0) throw std::invalid_argument("exit_tail_from: zero paths");
  if (!(mu > 0)) throw std::invalid_argument("exit_tail_from: mu <= 0");
  int hits = 0;
  for (double s : e.sup_distance)
    if (s >= mu) ++hits;
  double n = static_cast<double>(e.paths());
  double p = hits / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

TailEstimate exit_tail_probability(const Configuration& y, double t, double mu,
                                   SdeConfig cfg) {
  if (!(t > 0)) throw std::invalid_argument("exit_tail_probability: t <= 0");
  cfg.t_max = t;
  PathEnsemble e = simulate_ensemble(y, cfg, std::vector<VectorObservable>{});
  return exit_tail_from(e, mu);
}

}  // namespace kraichnan
