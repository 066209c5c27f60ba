#include "kraichnan/hopf.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace kraichnan {

double ForcingSpec::operator()(double r) const {
  if (!(radius > 0.0)) throw std::invalid_argument("ForcingSpec: radius <= 0");
  if (r < 0.0) throw std::invalid_argument("ForcingSpec: negative radius");
  switch (kind) {
    case Kind::UnitBall:
      return r <= radius ? 1.0 : 0.0;
    case Kind::SmoothBump: {
      double u = r / radius;
      return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    }
  }
  return 0.0;
}

RadialForcing ForcingSpec::radial() const {
  ForcingSpec copy = *this;
  return {[copy](double r) { return copy(r); }, radius};
}

ValueWithError f2_at(const Vec& y1, const Vec& y2, const ForcingSpec& forcing,
                     F2Mode mode, SdeConfig cfg) {
  const SymbolParams p2(2, cfg.params.d, cfg.params.xi);
  if (mode == F2Mode::Oracle)
    return {radial_f2_oracle((y1 - y2).norm(), forcing.radial(), p2), 0.0};
  cfg.params = p2;
  Configuration x0 = translation_reduce({y1, y2});
  if (degeneration_distance(x0) == 0.0)
    throw std::invalid_argument("f2_at: coincident points");
  Observable g = [forcing](const Vec& s) { return forcing(s.norm()); };
  GreenSample gs = green_apply(g, x0, cfg);
  return {gs.value, gs.stderr_};
}

CorrelatorFn f2_oracle_evaluator(const ForcingSpec& forcing,
                                 const SymbolParams& params) {
  auto interp = std::make_shared<F2Interpolant>(
      forcing.radial(), SymbolParams(2, params.d, params.xi));
  return [interp](const Mat& pts) {
    if (pts.cols() != 2)
      throw std::invalid_argument("f2 evaluator: expected 2 points");
    return (*interp)((pts.col(0) - pts.col(1)).norm());
  };
}

CorrelatorResult f2n_recursive(const std::vector<Vec>& y,
                               const ForcingSpec& forcing, SdeConfig cfg,
                               int depth_guard, const CorrelatorFn& lower) {
  const int m = static_cast<int>(y.size());
  if (m % 2 != 0)
    throw std::invalid_argument("f2n_recursive: odd correlators vanish");
  if (m < 2) throw std::invalid_argument("f2n_recursive: need >= 2 points");
  if (m > 6 || m > depth_guard)
    throw std::invalid_argument("f2n_recursive: depth guard exceeded");
  if (m == 2) {
    ValueWithError v = f2_at(y[0], y[1], forcing, F2Mode::Oracle, cfg);
    return {v.value, v.stderr_, 0.0, {{0, 1, v.value, v.stderr_}}};
  }

  const int d = cfg.params.d;
  cfg.params = SymbolParams(m, d, cfg.params.xi);
  Configuration x0 = translation_reduce(y);
  if (degeneration_distance(x0) == 0.0)
    throw std::invalid_argument("f2n_recursive: start on degeneration set");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  const int np = static_cast<int>(pairs.size());

  const double T = cfg.t_max;
  const int nbins = 8;
  const double t_lo = T / 10.0;
  const double log_step = std::log(10.0) / nbins;

  VectorObservable vo;
  vo.size = np + nbins;
  vo.add = [&forcing, &lower, pairs, np, m, d, t_lo, log_step, nbins](
               const Vec& s, double t, double dt, double* acc) {
    // absolute points (up to the irrelevant overall translation)
    Mat abs_pts = Mat::Zero(d, m);
    for (int k = 1; k < m; ++k)
      abs_pts.col(k) = abs_pts.col(k - 1) - s.segment((k - 1) * d, d);
    double total = 0.0;
    Mat comp(d, m - 2);
    for (int p = 0; p < np; ++p) {
      auto [i, j] = pairs[p];
      double c = forcing((abs_pts.col(i) - abs_pts.col(j)).norm());
      if (c == 0.0) continue;
      int col = 0;
      for (int k = 0; k < m; ++k)
        if (k != i && k != j) comp.col(col++) = abs_pts.col(k);
      double v = c * lower(comp) * dt;
      acc[p] += v;
      total += v;
    }
    if (total != 0.0 && t >= t_lo) {
      int k = std::min(nbins - 1,
                       static_cast<int>(std::log(t / t_lo) / log_step));
      acc[np + k] += total;
    }
  };

  PathEnsemble ens = simulate_ensemble(x0, cfg, std::vector<VectorObservable>{vo});
  const int n = ens.paths();
  const Mat& occ = ens.occupation[0];
  const double sqn = std::sqrt(double(n));

  CorrelatorResult out;
  Vec totals = Vec::Zero(n);
  for (int p = 0; p < np; ++p) {
    Vec row = occ.row(p);
    double mean = row.mean();
    double sd = std::sqrt((row.array() - mean).square().sum() /
                          std::max(1, n - 1));
    out.terms.push_back({pairs[p].first, pairs[p].second, mean, sd / sqn});
    out.value += mean;
    totals += row;
  }
  {
    double mean = totals.mean();
    out.stderr_ = std::sqrt((totals.array() - mean).square().sum() /
                            std::max(1, n - 1)) / sqn;
  }

  std::vector<FitPoint> pts;
  for (int k = 0; k < nbins; ++k) {
    double e0 = t_lo * std::exp(k * log_step);
    double e1 = t_lo * std::exp((k + 1) * log_step);
    Vec row = occ.row(np + k);
    double mean = row.mean();
    if (mean > 0.0) {
      double sd = std::sqrt((row.array() - mean).square().sum() /
                            std::max(1, n - 1));
      pts.push_back({std::sqrt(e0 * e1), mean / (e1 - e0),
                     sd / sqn / (e1 - e0)});
    }
  }
  if (pts.size() >= 4) {
    FitResult fr = fit_exponent(pts);
    if (fr.slope >= -1.0)
      throw std::runtime_error(
          "f2n_recursive: fitted tail exponent >= -1, integral diverges");
    out.tail_bound = std::exp(fr.intercept) * std::pow(T, 1.0 + fr.slope) /
                     (-1.0 - fr.slope);
  }
  return out;
}

CorrelatorResult f4_at(const std::vector<Vec>& y, const ForcingSpec& forcing,
                       SdeConfig cfg) {
  if (y.size() != 4) throw std::invalid_argument("f4_at: need 4 points");
  return f2n_recursive(y, forcing, cfg, 4,
                       f2_oracle_evaluator(forcing, cfg.params));
}

std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int m) {
  if (m % 2 != 0) throw std::invalid_argument("perfect_matchings: odd count");
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> free_idx(m);
  for (int i = 0; i < m; ++i) free_idx[i] = i;
  std::vector<std::pair<int, int>> cur;
  std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& rem) {
    if (rem.empty()) {
      out.push_back(cur);
      return;
    }
    int a = rem.front();
    for (size_t t = 1; t < rem.size(); ++t) {
      int b = rem[t];
      std::vector<int> next;
      for (size_t s = 1; s < rem.size(); ++s)
        if (s != t) next.push_back(rem[s]);
      cur.emplace_back(a, b);
      rec(next);
      cur.pop_back();
    }
  };
  rec(free_idx);
  return out;
}

double pair_bound(const std::vector<Vec>& y, const SymbolParams& params) {
  const int m = static_cast<int>(y.size());
  if (m % 2 != 0) throw std::invalid_argument("pair_bound: odd count");
  const double expo = 2.0 - params.xi - params.d;
  double sum = 0.0;
  for (const auto& match : perfect_matchings(m)) {
    double prod = 1.0;
    for (auto [i, j] : match)
      prod *= std::pow(1.0 + (y[i] - y[j]).norm(), expo);
    sum += prod;
  }
  return sum;
}

}  // namespace kraichnan
