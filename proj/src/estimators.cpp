#include "kraichnan/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kraichnan/rng.hpp"

namespace kraichnan {

namespace {

constexpr std::uint64_t kResampleSeed = 0x5eedULL;  // fixed auxiliary stream
constexpr int kBootstrap = 32;

double ball_volume(int m, double r) {
  return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0) * std::pow(r, m);
}

struct MeanSd {
  double mean, sd;
};

MeanSd mean_sd(const double* v, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m += v[i];
  m /= n;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) s2 += (v[i] - m) * (v[i] - m);
  return {m, n > 1 ? std::sqrt(s2 / (n - 1)) : 0.0};
}

/// Multinomial bootstrap resample counts, deterministic in (seed, replicate).
std::vector<std::vector<std::uint32_t>> bootstrap_counts(int n_paths,
                                                         std::uint64_t seed) {
  std::vector<std::vector<std::uint32_t>> counts(
      kBootstrap, std::vector<std::uint32_t>(n_paths, 0));
  for (int b = 0; b < kBootstrap; ++b) {
    Rng rng(seed, static_cast<std::uint64_t>(b) + 1);
    for (int i = 0; i < n_paths; ++i) {
      int idx = static_cast<int>(rng.next_u64() % n_paths);
      ++counts[b][idx];
    }
  }
  return counts;
}

}  // namespace

void GridSpec::validate() const {
  if (lo.size() != hi.size() || static_cast<size_t>(lo.size()) != shape.size())
    throw std::invalid_argument("GridSpec: inconsistent dimensions");
  for (size_t j = 0; j < shape.size(); ++j) {
    if (shape[j] < 1) throw std::invalid_argument("GridSpec: empty axis");
    if (!(hi[j] > lo[j])) throw std::invalid_argument("GridSpec: hi <= lo");
  }
}

int GridSpec::points() const {
  int n = 1;
  for (int s : shape) n *= s;
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (size_t j = 0; j < shape.size(); ++j) v *= (hi[j] - lo[j]) / shape[j];
  return v;
}

Vec GridSpec::center(int flat_index) const {
  const int dim = static_cast<int>(shape.size());
  Vec c(dim);
  for (int j = 0; j < dim; ++j) {
    int k = flat_index % shape[j];
    flat_index /= shape[j];
    c[j] = lo[j] + (hi[j] - lo[j]) * (k + 0.5) / shape[j];
  }
  return c;
}

DensityGrid heat_kernel_density(const Configuration& x0, double t,
                                SdeConfig cfg, const GridSpec& grid) {
  if (!(t > 0)) throw std::invalid_argument("heat_kernel_density: t <= 0");
  grid.validate();
  const int dim = x0.dim();
  if (static_cast<int>(grid.shape.size()) != dim)
    throw std::invalid_argument("heat_kernel_density: grid dimension mismatch");
  cfg.t_max = t;
  PathEnsemble ens =
      simulate_ensemble(x0, cfg, std::vector<VectorObservable>{});
  const int n = ens.paths();

  // rule-of-thumb product-kernel bandwidth
  const double factor =
      std::pow(4.0 / ((dim + 2.0) * n), 1.0 / (dim + 4.0));
  Vec h(dim);
  for (int j = 0; j < dim; ++j) {
    Vec row = ens.endpoints.row(j);
    MeanSd ms = mean_sd(row.data(), n);
    h[j] = std::max(ms.sd, 1e-12) * factor;
  }

  int effective = 0;
  for (int p = 0; p < n; ++p) {
    bool in = true;
    for (int j = 0; j < dim && in; ++j) {
      double e = ens.endpoints(j, p);
      in = e >= grid.lo[j] - 3.0 * h[j] && e <= grid.hi[j] + 3.0 * h[j];
    }
    if (in) ++effective;
  }
  if (effective < 100)
    throw std::runtime_error(
        "heat_kernel_density: fewer than 100 effective paths in grid region");

  double norm = 1.0;
  for (int j = 0; j < dim; ++j) norm /= h[j] * std::sqrt(2.0 * M_PI);

  auto counts = bootstrap_counts(n, kResampleSeed);

  DensityGrid out;
  out.bandwidth = h;
  const int npts = grid.points();
  out.centers.reserve(npts);
  out.values.resize(npts);
  out.stderr_.resize(npts);
  std::vector<double> k(n);
  for (int c = 0; c < npts; ++c) {
    Vec center = grid.center(c);
    out.centers.push_back(center);
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
      double q = 0.0;
      for (int j = 0; j < dim; ++j) {
        double z = (ens.endpoints(j, p) - center[j]) / h[j];
        q += z * z;
      }
      k[p] = norm * std::exp(-0.5 * q);
      sum += k[p];
    }
    out.values[c] = sum / n;
    double bm = 0.0, bs = 0.0;
    for (int b = 0; b < kBootstrap; ++b) {
      double vb = 0.0;
      for (int p = 0; p < n; ++p) vb += counts[b][p] * k[p];
      vb /= n;
      bm += vb;
      bs += vb * vb;
    }
    bm /= kBootstrap;
    out.stderr_[c] = std::sqrt(std::max(0.0, bs / kBootstrap - bm * bm));
  }
  return out;
}

ValueWithError semigroup_apply(const Observable& f, const Configuration& x0,
                               double t, SdeConfig cfg) {
  if (!(t > 0)) throw std::invalid_argument("semigroup_apply: t <= 0");
  cfg.t_max = t;
  PathEnsemble ens =
      simulate_ensemble(x0, cfg, std::vector<VectorObservable>{});
  const int n = ens.paths();
  std::vector<double> vals(n);
  for (int p = 0; p < n; ++p) vals[p] = f(ens.endpoints.col(p));
  MeanSd ms = mean_sd(vals.data(), n);
  return {ms.mean, ms.sd / std::sqrt(double(n))};
}

GreenSample green_apply(const Observable& g, const Configuration& x0,
                        SdeConfig cfg) {
  const double T = cfg.t_max;
  const int nbins = 8;  // last decade of t, log-spaced
  const double t_lo = T / 10.0;
  const double log_step = std::log(10.0) / nbins;

  VectorObservable vo;
  vo.size = 1 + nbins;
  vo.add = [g, t_lo, log_step, nbins](const Vec& s, double t, double dt,
                                      double* acc) {
    double v = g(s) * dt;
    if (v == 0.0) return;
    acc[0] += v;
    if (t >= t_lo) {
      int k = std::min(nbins - 1,
                       static_cast<int>(std::log(t / t_lo) / log_step));
      acc[1 + k] += v;
    }
  };
  PathEnsemble ens = simulate_ensemble(x0, cfg, std::vector<VectorObservable>{vo});
  const int n = ens.paths();
  const Mat& occ = ens.occupation[0];

  GreenSample out;
  out.t_truncation = T;
  {
    Vec totals = occ.row(0);
    MeanSd ms = mean_sd(totals.data(), n);
    out.value = ms.mean;
    out.stderr_ = ms.sd / std::sqrt(double(n));
  }

  // fit E[g(X_t)] ~ c t^alpha and integrate past T.  The first bins of the
  // last decade are the least noisy but also the least asymptotic, and the
  // weighted fit would let them flatten the slope; prefer the later bins
  // when enough of them are populated.
  std::vector<FitPoint> pts, late;
  for (int k = 0; k < nbins; ++k) {
    double e0 = t_lo * std::exp(k * log_step);
    double e1 = t_lo * std::exp((k + 1) * log_step);
    Vec row = occ.row(1 + k);
    MeanSd ms = mean_sd(row.data(), n);
    if (ms.mean > 0.0) {
      FitPoint pt{std::sqrt(e0 * e1), ms.mean / (e1 - e0),
                  ms.sd / std::sqrt(double(n)) / (e1 - e0)};
      pts.push_back(pt);
      if (k >= 3) late.push_back(pt);
    }
  }
  if (late.size() >= 4) pts = late;
  if (pts.size() >= 4) {
    FitResult fr = fit_exponent(pts);
    if (fr.slope >= -1.0)
      throw std::runtime_error(
          "green_apply: fitted tail exponent >= -1, integral diverges");
    out.tail_bound =
        std::exp(fr.intercept) * std::pow(T, 1.0 + fr.slope) / (-1.0 - fr.slope);
  }
  return out;
}

RadialDensity green_density(const Configuration& x0,
                            const std::vector<double>& shell_edges,
                            SdeConfig cfg, double rho_exclusion) {
  const int nshells = static_cast<int>(shell_edges.size()) - 1;
  if (nshells < 1)
    throw std::invalid_argument("green_density: need at least one shell");
  for (int k = 0; k < nshells; ++k)
    if (!(shell_edges[k] < shell_edges[k + 1]) || shell_edges[k] < 0.0)
      throw std::invalid_argument("green_density: edges must increase");
  const int dim = x0.dim();
  const Vec origin = x0.flat();
  const std::vector<double> edges = shell_edges;

  VectorObservable vo;
  vo.size = nshells;
  vo.add = [origin, edges, nshells](const Vec& s, double, double dt,
                                    double* acc) {
    double r = (s - origin).norm();
    if (r < edges.front() || r >= edges.back()) return;
    int k = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), r) -
                             edges.begin()) - 1;
    if (k >= 0 && k < nshells) acc[k] += dt;
  };
  PathEnsemble ens = simulate_ensemble(x0, cfg, std::vector<VectorObservable>{vo});
  const int n = ens.paths();
  const Mat& occ = ens.occupation[0];

  RadialDensity out;
  const double excl = rho_exclusion * origin.norm();
  bool any = false;
  for (int k = 0; k < nshells; ++k) {
    out.r_centers.push_back(std::sqrt(shell_edges[k] * shell_edges[k + 1]));
    double vol = ball_volume(dim, shell_edges[k + 1]) -
                 ball_volume(dim, shell_edges[k]);
    Vec row = occ.row(k);
    MeanSd ms = mean_sd(row.data(), n);
    if (shell_edges[k + 1] <= excl) {
      out.values.push_back(std::numeric_limits<double>::quiet_NaN());
      out.stderr_.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (ms.mean > 0.0) any = true;
    out.values.push_back(ms.mean / vol);
    out.stderr_.push_back(ms.sd / std::sqrt(double(n)) / vol);
  }
  if (!any)
    throw std::runtime_error("green_density: no occupation mass in the region");
  return out;
}

double radial_f2_oracle(double r, const RadialForcing& chi,
                        const SymbolParams& params) {
  const int d = params.d;
  const double xi = params.xi;
  if (!(d + xi > 2.0))
    throw std::invalid_argument("radial_f2_oracle: d + xi <= 2, non-integrable");
  if (!(r >= 0.0) || !(chi.support_radius > 0.0))
    throw std::invalid_argument("radial_f2_oracle: bad arguments");
  const double R = chi.support_radius;
  using boost::math::quadrature::gauss_kronrod;

  auto inner = [&](double rho) {
    double up = std::min(rho, R);
    if (up <= 0.0) return 0.0;
    return gauss_kronrod<double, 31>::integrate(
        [&](double s) { return std::pow(s, d - 1) * chi.chi(s); }, 0.0, up, 12,
        1e-10);
  };
  const double tail_coeff = inner(R) / (d + xi - 2.0);
  if (r >= R) return tail_coeff * std::pow(r, 2.0 - d - xi);
  double numeric = gauss_kronrod<double, 31>::integrate(
      [&](double rho) { return std::pow(rho, 1.0 - d - xi) * inner(rho); }, r,
      R, 12, 1e-10);
  return numeric + tail_coeff * std::pow(R, 2.0 - d - xi);
}

F2Interpolant::F2Interpolant(const RadialForcing& chi,
                             const SymbolParams& params, int table_points) {
  const int d = params.d;
  const double xi = params.xi;
  if (!(d + xi > 2.0))
    throw std::invalid_argument("F2Interpolant: d + xi <= 2");
  if (table_points < 16)
    throw std::invalid_argument("F2Interpolant: table too small");
  support_ = chi.support_radius;
  tail_exp_ = 2.0 - d - xi;

  // cumulative trapezoid on a refined grid; O(h^2) error is far below the
  // Monte Carlo noise of every consumer
  const int fine = 4 * table_points;
  const double h = support_ / fine;
  std::vector<double> inner(fine + 1, 0.0);
  auto f = [&](double s) { return std::pow(s, d - 1) * chi.chi(s); };
  for (int i = 0; i < fine; ++i)
    inner[i + 1] = inner[i] + 0.5 * h * (f(i * h) + f((i + 1) * h));
  tail_coeff_ = inner[fine] / (d + xi - 2.0);

  std::vector<double> F(fine + 1);
  F[fine] = tail_coeff_ * std::pow(support_, tail_exp_);
  auto g = [&](int i) {
    double rho = i * h;
    return rho > 0.0 ? std::pow(rho, 1.0 - d - xi) * inner[i] : 0.0;
  };
  for (int i = fine; i > 0; --i)
    F[i - 1] = F[i] + 0.5 * h * (g(i - 1) + g(i));

  table_.resize(table_points + 1);
  for (int k = 0; k <= table_points; ++k) table_[k] = F[4 * k];
  step_ = support_ / table_points;
}

double F2Interpolant::operator()(double r) const {
  if (r >= support_) return tail_coeff_ * std::pow(r, tail_exp_);
  if (r < 0.0) throw std::invalid_argument("F2Interpolant: negative radius");
  double u = r / step_;
  int k = std::min(static_cast<int>(u), static_cast<int>(table_.size()) - 2);
  double w = u - k;
  return (1.0 - w) * table_[k] + w * table_[k + 1];
}

double envelope_block(double t, const Vec& x, const Vec& y, double C,
                      const SymbolParams& params) {
  const int d = params.d;
  const double xi = params.xi;
  const double rx = x.norm();
  const double dxy = (x - y).norm();
  if (y.norm() < 0.5 * rx) {
    return C * std::pow(rx, -0.5 * xi * d) * std::pow(t, -0.5 * d) *
           std::exp(-std::pow(rx, -xi) * dxy * dxy / (C * t));
  }
  return C * std::pow(t, -d / (2.0 - xi)) *
         std::exp(-std::pow(dxy, 2.0 - xi) / (C * t));
}

double estimate_E(double t, const Vec& x, const Vec& y, double C, int l,
                  const SymbolParams& params) {
  if (!(t > 0) || !(C > 0))
    throw std::invalid_argument("estimate_E: need t > 0 and C > 0");
  const int d = params.d;
  if (x.size() != y.size() || x.size() % d != 0)
    throw std::invalid_argument("estimate_E: bad dimensions");
  const int nb = static_cast<int>(x.size()) / d;
  if (l < 0 || l > nb) throw std::invalid_argument("estimate_E: bad split");
  double out = 1.0;
  for (int i = 0; i < nb; ++i) {
    Vec xi_blk = x.segment(i * d, d);
    Vec yi_blk = y.segment(i * d, d);
    if (i < l) {
      out *= envelope_block(t, xi_blk, yi_blk, C, params);
    } else {
      double q = (xi_blk - yi_blk).squaredNorm();
      out *= C * std::pow(t, -0.5 * d) * std::exp(-q / (C * t));
    }
  }
  return out;
}

double estimate_E_integrated(const Vec& x, const Vec& y, double C, int l,
                             const SymbolParams& params) {
  boost::math::quadrature::exp_sinh<double> integrator;
  // At t -> 0 with x != y the Gaussian underflow times the t^{-d/2} overflow
  // produces 0 * inf; the true limit is 0.
  return integrator.integrate(
      [&](double t) {
        double v = estimate_E(t, x, y, C, l, params);
        return std::isfinite(v) ? v : 0.0;
      },
      1e-9);
}

}  // namespace kraichnan
