#include "kraichnan/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kraichnan/rng.hpp"

namespace kraichnan {

namespace {

constexpr int kMaxResample = 10000;

Vec gaussian_vec(Rng& rng, int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.next_normal();
  return v;
}

Vec random_direction(Rng& rng, int d) {
  for (;;) {
    Vec v = gaussian_vec(rng, d);
    double r = v.norm();
    if (r > 1e-12) return v / r;
  }
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::exp(rng.next_uniform() * std::log(hi / lo));
}

double spectral_norm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double surface_area(int m) {  // of S^{m-1} in R^m
  return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

double ball_volume(int m, double r) {
  return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0) * std::pow(r, m);
}

}  // namespace

CheckReport check_degeneration(const SymbolParams& params, int samples,
                               double tol, std::uint64_t seed, double c_lower) {
  if (samples < 1) throw std::invalid_argument("check_degeneration: samples < 1");
  const int nb = params.blocks();
  const int d = params.d;
  CheckReport rep;
  rep.name = "degeneration";
  rep.samples = samples;
  rep.seed = seed;
  rep.constant = 1.0;

  double worst = 0.0;
  // on-set direction: force one window sum to zero
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, 2 * s);
    Configuration x(nb, d);
    for (int k = 1; k <= nb; ++k) x.block(k) = gaussian_vec(rng, d);
    int i = 1 + static_cast<int>(rng.next_u64() % nb);
    int j = i + static_cast<int>(rng.next_u64() % (nb - i + 1));
    if (i == j)
      x.block(i).setZero();
    else
      x.block(j) = -x.partial_sum(i, j - 1);
    SymbolMatrix S = assemble_symbol(x, params);
    double nrm = spectral_norm(S.m);
    double lmin = std::abs(min_eigenvalue(S));
    if (nrm > 0.0) worst = std::max(worst, lmin / (tol * nrm));
  }
  double on_worst = worst;

  // off-set direction: rescale to a prescribed distance delta in [0.1, 1]
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, 2 * s + 1);
    Configuration x(nb, d);
    double dist = 0.0;
    do {
      for (int k = 1; k <= nb; ++k) x.block(k) = gaussian_vec(rng, d);
      dist = degeneration_distance(x);
    } while (dist <= 1e-8);
    double delta = 0.1 + 0.9 * rng.next_uniform();
    x.flat() *= delta / dist;
    double lmin = min_eigenvalue(assemble_symbol(x, params));
    double bound = c_lower * std::pow(delta, params.xi);
    worst = std::max(worst, bound / std::max(lmin, 1e-300));
  }

  rep.max_ratio = worst;
  rep.pass = worst <= rep.constant;
  rep.note = "on-set worst normalized lambda_min " + std::to_string(on_worst);
  return rep;
}

namespace {

/// One hypothesis-satisfying (x, v, LHS, bracket-RHS-without-E) draw.
struct CrossSample {
  double lhs;
  double rhs_no_E;  // bracket * (|x_i|^xi |v_i|^2 + |x_j|^xi |v_j|^2)
};

CrossSample draw_cross(CrossLemma id, const SymbolParams& p, Rng& rng) {
  const int nb = p.blocks();
  const int d = p.d;
  const double xi = p.xi;
  Configuration x(nb, d);
  DirectionVector v(nb, d);
  for (int k = 1; k <= nb; ++k) {
    x.block(k) = gaussian_vec(rng, d);
    v.block(k) = gaussian_vec(rng, d);
  }
  auto weight = [&](int i, int j) {
    return std::pow(x.block(i).norm(), xi) * v.block(i).squaredNorm() +
           std::pow(x.block(j).norm(), xi) * v.block(j).squaredNorm();
  };

  switch (id) {
    case CrossLemma::Cro1: {
      double m2 = log_uniform(rng, 1e-3, 1.0);
      double m1 = log_uniform(rng, 1e-3, 1.0) * 0.5 * m2;
      x.block(2) = m2 * random_direction(rng, d);
      x.block(1) = m1 * random_direction(rng, d);
      double lhs = std::abs(
          v.block(1).dot((eval_d(x.partial_sum(1, 2), p) - eval_d(x.block(1), p) -
                          eval_d(x.block(2), p)) *
                         v.block(2)));
      double r = m1 / m2;
      double bracket = std::pow(r, 1.0 - 0.5 * xi) + std::pow(r, 0.5 * xi);
      return {lhs, bracket * weight(1, 2)};
    }
    case CrossLemma::Cro2: {
      // |x_1| < min(|x_{2,3}|, |x_2|)/2
      for (int k = 2; k <= 3; ++k)
        x.block(k) = log_uniform(rng, 1e-3, 1.0) * random_direction(rng, d);
      double m23 = x.partial_sum(2, 3).norm();
      double m2 = x.block(2).norm();
      double m1 = log_uniform(rng, 1e-3, 1.0) * 0.5 * std::min(m23, m2);
      x.block(1) = m1 * random_direction(rng, d);
      double lhs = std::abs(v.block(1).dot(cross_block(1, 3, x, p) * v.block(3)));
      double m3 = x.block(3).norm();
      double bracket =
          std::pow(m1 / m23, 1.0 - 0.5 * xi) * std::pow(m23 / m3, 0.5 * xi) +
          std::pow(m1 / m2, 1.0 - 0.5 * xi) * std::pow(m2 / m3, 0.5 * xi);
      return {lhs, bracket * weight(1, 3)};
    }
    case CrossLemma::Cro3: {
      // |x_2|/2 <= |x_1| < |x_{2,3}|/2
      double m2 = 0.0, m23 = 0.0;
      int tries = 0;
      do {
        for (int k = 2; k <= 3; ++k)
          x.block(k) = log_uniform(rng, 1e-3, 1.0) * random_direction(rng, d);
        m2 = x.block(2).norm();
        m23 = x.partial_sum(2, 3).norm();
        if (++tries > kMaxResample)
          throw std::runtime_error("check_cross_lemma: cro3 sampler stuck");
      } while (!(m2 < m23));
      double m1 = 0.5 * (m2 + rng.next_uniform() * (m23 - m2));
      x.block(1) = m1 * random_direction(rng, d);
      double lhs = std::abs(v.block(1).dot(cross_block(1, 3, x, p) * v.block(3)));
      double m3 = x.block(3).norm();
      double bracket =
          std::pow(m1 / m23, 1.0 - 0.5 * xi) * std::pow(m23 / m3, 0.5 * xi) +
          std::pow(m1 / m3, 0.5 * xi);
      return {lhs, bracket * weight(1, 3)};
    }
    case CrossLemma::Cro4: {
      // max(|x_1|, |x_3|) < |x_2|/3
      double m2 = log_uniform(rng, 1e-3, 1.0);
      x.block(2) = m2 * random_direction(rng, d);
      double m1 = log_uniform(rng, 1e-3, 1.0) * m2 / 3.0;
      double m3 = log_uniform(rng, 1e-3, 1.0) * m2 / 3.0;
      x.block(1) = m1 * random_direction(rng, d);
      x.block(3) = m3 * random_direction(rng, d);
      double lhs = std::abs(v.block(1).dot(cross_block(1, 3, x, p) * v.block(3)));
      double bracket = std::pow(m1 / m2, 2.0 - xi);
      return {lhs, bracket * weight(1, 3)};
    }
    case CrossLemma::Cro5: {
      // A = {1,3} inside [1,3]; sum_{k notin A} |x_k| = |x_2| small against
      // the window sums over pairs from A
      double s = 0.0, muA = 0.0;
      int tries = 0;
      do {
        x.block(1) = log_uniform(rng, 1e-3, 1.0) * random_direction(rng, d);
        x.block(3) = log_uniform(rng, 1e-3, 1.0) * random_direction(rng, d);
        double rough = std::min({x.block(1).norm(), x.block(3).norm(),
                                 (x.block(1) + x.block(3)).norm()});
        s = log_uniform(rng, 1e-3, 1.0) * 0.25 * rough;
        x.block(2) = s * random_direction(rng, d);
        muA = std::min({x.block(1).norm(), x.block(3).norm(),
                        x.partial_sum(1, 3).norm()});
        if (++tries > kMaxResample)
          throw std::runtime_error("check_cross_lemma: cro5 sampler stuck");
      } while (!(s <= 0.5 * muA));
      double lhs = std::abs(gamma_subset({1, 2, 3}, x, v, p) -
                            gamma_subset({1, 3}, x, v, p));
      double m1 = x.block(1).norm(), m3 = x.block(3).norm();
      double bracket =
          std::pow(s / muA, 1.0 - 0.5 * xi) * std::pow((m1 + m3) / m3, 0.5 * xi) +
          std::pow(s / muA, 0.5 * xi);
      return {lhs, bracket * weight(1, 3)};
    }
    case CrossLemma::Don: {
      // cone set: 0.5 * max window sum <= min window sum; built by
      // perturbing a near-orthogonal base configuration
      const double eps = 0.5;
      int tries = 0;
      for (;;) {
        double scale = log_uniform(rng, 1e-3, 1.0);
        for (int k = 1; k <= nb; ++k) {
          Vec base = Vec::Zero(d);
          base[(k - 1) % d] = (k % 4 < 2) ? 1.0 : -1.0;
          x.block(k) = scale * (base + 0.3 * gaussian_vec(rng, d));
        }
        double mn = 1e300, mx = 0.0;
        for (int i = 1; i <= nb; ++i)
          for (int j = i; j <= nb; ++j) {
            double w = x.partial_sum(i, j).norm();
            mn = std::min(mn, w);
            mx = std::max(mx, w);
          }
        if (eps * mx <= mn) break;
        if (++tries > kMaxResample)
          throw std::runtime_error("check_cross_lemma: don sampler stuck");
      }
      double form = v.flat().dot(assemble_symbol(x, p).m * v.flat());
      double ref = 0.0;
      for (int k = 1; k <= nb; ++k)
        ref += std::pow(x.block(k).norm(), xi) * v.block(k).squaredNorm();
      double ratio = std::max(form / ref, ref / form);
      return {ratio, 1.0};  // two-sided comparability as a single ratio
    }
  }
  throw std::logic_error("check_cross_lemma: unknown id");
}

}  // namespace

CheckReport check_cross_lemma(CrossLemma id, const SymbolParams& params,
                              int samples, double E_frozen,
                              std::uint64_t seed) {
  const int need_n = (id == CrossLemma::Cro1) ? 3 : 4;
  if (params.n < need_n)
    throw std::invalid_argument("check_cross_lemma: n too small for this lemma");
  CheckReport rep;
  rep.name = "cross_lemma";
  rep.samples = samples;
  rep.seed = seed;
  rep.constant = E_frozen;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, s);
    CrossSample cs = draw_cross(id, params, rng);
    if (cs.rhs_no_E > 0.0) worst = std::max(worst, cs.lhs / cs.rhs_no_E);
  }
  rep.max_ratio = worst;
  rep.pass = worst <= E_frozen;
  return rep;
}

CheckReport check_structure(const Configuration& x, const SymbolParams& params,
                            double radius, int samples, double lambda_frozen,
                            std::uint64_t seed) {
  const int nb = params.blocks();
  const int d = params.d;
  if (x.blocks() != nb)
    throw std::invalid_argument("check_structure: configuration size mismatch");
  std::vector<bool> vanish(nb + 1, false);
  bool any = false;
  for (int k = 1; k <= nb; ++k) {
    vanish[k] = x.block(k).norm() == 0.0;
    any = any || vanish[k];
  }
  if (!any)
    throw std::invalid_argument("check_structure: x is not a degeneration point");
  // the vanishing pattern must be block-aligned: every window not contained
  // in a vanishing run must itself be nonzero (reorganized form)
  for (int i = 1; i <= nb; ++i)
    for (int j = i; j <= nb; ++j) {
      bool all_vanish = true;
      for (int k = i; k <= j; ++k) all_vanish = all_vanish && vanish[k];
      if (!all_vanish && x.partial_sum(i, j).norm() == 0.0)
        throw std::invalid_argument(
            "check_structure: non-run window vanishes; reorganize first");
    }
  // maximal runs of vanishing blocks
  std::vector<std::pair<int, int>> runs;
  for (int k = 1; k <= nb; ++k) {
    if (!vanish[k]) continue;
    if (!runs.empty() && runs.back().second == k - 1)
      runs.back().second = k;
    else
      runs.emplace_back(k, k);
  }

  CheckReport rep;
  rep.name = "structure";
  rep.samples = samples;
  rep.seed = seed;
  rep.constant = lambda_frozen;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, s);
    Configuration y(nb, d);
    DirectionVector v(nb, d);
    for (int k = 1; k <= nb; ++k) {
      double u = std::pow(rng.next_uniform(), 1.0 / d);
      y.block(k) = x.block(k) + radius * u * random_direction(rng, d);
      v.block(k) = gaussian_vec(rng, d);
    }
    double form = v.flat().dot(assemble_symbol(y, params).m * v.flat());
    double model = 0.0;
    for (auto [a, b] : runs) {
      int len = b - a + 1;
      SymbolParams sub(len + 1, d, params.xi);
      Configuration ys(len, d);
      DirectionVector vs(len, d);
      for (int k = 0; k < len; ++k) {
        ys.block(k + 1) = y.block(a + k);
        vs.block(k + 1) = v.block(a + k);
      }
      model += vs.flat().dot(assemble_symbol(ys, sub).m * vs.flat());
    }
    for (int k = 1; k <= nb; ++k)
      if (!vanish[k]) model += v.block(k).squaredNorm();
    if (form > 0.0 && model > 0.0)
      worst = std::max(worst, std::max(form / model, model / form));
  }
  rep.max_ratio = worst;
  rep.pass = worst <= lambda_frozen;
  return rep;
}

double WeightSpec::distance(const Vec& x) const {
  if (normals.empty()) return x.norm();
  double best = std::numeric_limits<double>::infinity();
  for (const Mat& N : normals) best = std::min(best, (N * x).norm());
  return best;
}

CheckReport check_weight(const WeightSpec& F, double xi, int samples,
                         std::uint64_t seed, double C_frozen) {
  const int n = F.ambient_dim;
  if (n < 2) throw std::invalid_argument("check_weight: ambient_dim < 2");
  for (const Mat& N : F.normals)
    if (N.cols() != n || N.rows() < 2)
      throw std::invalid_argument("check_weight: codimension must be >= 2");
  const int kMc = 4000;
  const double c_full = surface_area(n) / (n + xi);  // w(B(0,r)) for F={0}

  CheckReport rep;
  rep.name = "weight";
  rep.samples = samples;
  rep.seed = seed;
  rep.constant = C_frozen;
  double worst = 0.0;

  auto ball_mean = [&](Rng& rng, const Vec& c, double r, double expo) {
    double acc = 0.0;
    for (int m = 0; m < kMc; ++m) {
      double u = std::pow(rng.next_uniform(), 1.0 / n);
      Vec y = c + r * u * random_direction(rng, n);
      acc += std::pow(F.distance(y), expo);
    }
    return acc / kMc;
  };

  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, s);
    Vec c(n);
    double dist = 0.0;
    do {
      c = log_uniform(rng, 0.1, 2.0) * random_direction(rng, n);
      dist = F.distance(c);
    } while (dist <= 1e-6);

    // regime 1: r < dist/2, reference dist^xi * |B_r|
    {
      double r = (0.1 + 0.8 * rng.next_uniform()) * 0.5 * dist;
      double w = ball_mean(rng, c, r, xi) * ball_volume(n, r);
      double ref = std::pow(dist, xi) * ball_volume(n, r);
      worst = std::max(worst, std::max(w / ref, ref / w));
    }
    // regime 2: r >= dist/2, reference r^{n+xi} (normalized by the exact
    // F = {0}, x = 0 polar constant to keep ratios near 1)
    {
      double r = dist * (0.5 + 3.5 * rng.next_uniform());
      double w = ball_mean(rng, c, r, xi) * ball_volume(n, r);
      double ref = c_full * std::pow(r, n + xi);
      worst = std::max(worst, std::max(w / ref, ref / w));
      // doubling on the same ball
      double w2 = ball_mean(rng, c, 2.0 * r, xi) * ball_volume(n, 2.0 * r);
      worst = std::max(worst, w2 / w / std::pow(2.0, n + xi));
      // A2 ratio: (avg w)(avg w^{-1})
      double winv = ball_mean(rng, c, r, -xi);
      worst = std::max(worst, ball_mean(rng, c, r, xi) * winv);
    }
  }
  rep.max_ratio = worst;
  rep.pass = worst <= C_frozen;
  return rep;
}

double bai_lhs(const Vec& x, int d, double xi, int max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  const double X = x.norm();
  const double p = 2.0 - xi;  // inner radial integral exponent
  auto theta_integrand = [&](double th) {
    double ct = std::cos(th), st = std::sin(th);
    double disc = 1.0 - X * X * st * st;
    double lo = 0.0, hi = 0.0;
    if (X <= 1.0) {
      hi = -X * ct + std::sqrt(std::max(0.0, disc));
    } else {
      if (disc < 0.0) return 0.0;
      double rt = std::sqrt(disc);
      lo = -X * ct - rt;
      hi = -X * ct + rt;
      if (hi <= 0.0) return 0.0;
      lo = std::max(lo, 0.0);
    }
    double ang = d > 2 ? std::pow(st, d - 2) : 1.0;
    return ang * (std::pow(hi, p) - std::pow(lo, p)) / p;
  };
  return surface_area(d - 1) *
         gauss_kronrod<double, 31>::integrate(theta_integrand, 0.0, M_PI,
                                              max_depth, 1e-10);
}

namespace {

double prc_lhs(const Vec& x, int d, double xi, int max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  const double X = x.norm();
  const double a = 2.0 - xi - 2.0 * d;  // exponent on (1+|x-y|)
  const double b = 2.0 - xi - d;        // exponent on (1+|y|)
  auto outer = [&](double s) {
    auto inner = [&](double th) {
      double q = std::sqrt(std::max(0.0, X * X + s * s - 2.0 * X * s * std::cos(th)));
      double ang = d > 2 ? std::pow(std::sin(th), d - 2) : 1.0;
      return ang * std::pow(1.0 + q, a);
    };
    double angular = gauss_kronrod<double, 31>::integrate(inner, 0.0, M_PI,
                                                          max_depth, 1e-9);
    return std::pow(s, d - 1) * std::pow(1.0 + s, b) * angular;
  };
  return surface_area(d - 1) *
         gauss_kronrod<double, 31>::integrate(
             outer, 0.0, std::numeric_limits<double>::infinity(), max_depth,
             1e-9);
}

}  // namespace

CheckReport check_bai(int l, int d, double xi, const std::vector<Vec>& xgrid,
                      double C_frozen) {
  if (l != 1 && l != 2) throw std::invalid_argument("check_bai: l must be 1 or 2");
  if (!(2.0 - xi - d < 0.0))
    throw std::invalid_argument("check_bai: need 2 - xi - d < 0");
  CheckReport rep;
  rep.name = l == 1 ? "bai" : "prc";
  rep.samples = static_cast<int>(xgrid.size());
  rep.constant = C_frozen;
  double worst = 0.0, worst_coarse = 0.0;
  for (const Vec& x : xgrid) {
    double lhs, lhs_coarse;
    if (l == 1) {
      lhs = bai_lhs(x, d, xi, 12);
      lhs_coarse = bai_lhs(x, d, xi, 6);
    } else {
      lhs = prc_lhs(x, d, xi, 12);
      lhs_coarse = prc_lhs(x, d, xi, 9);
    }
    double rhs = std::pow(1.0 + x.norm(), 2.0 - xi - d);
    worst = std::max(worst, lhs / rhs);
    worst_coarse = std::max(worst_coarse, lhs_coarse / rhs);
  }
  rep.max_ratio = worst;
  double drift_ = std::abs(worst - worst_coarse) / std::max(worst, 1e-300);
  rep.pass = worst <= C_frozen && drift_ <= 1e-5;
  rep.note = "refinement drift " + std::to_string(drift_);
  return rep;
}

CheckReport check_symmetry(const SymbolParams& params, int samples,
                           std::uint64_t seed) {
  if (params.n > 5) throw std::invalid_argument("check_symmetry: n > 5");
  auto maps = symmetries(params.n, params.d);
  std::vector<Mat> inv_t;
  inv_t.reserve(maps.size());
  for (const auto& m : maps)
    inv_t.push_back(m.matrix.inverse().transpose());

  CheckReport rep;
  rep.name = "symmetry";
  rep.samples = samples;
  rep.seed = seed;
  rep.constant = 1e-12;
  const int nb = params.blocks();
  const int d = params.d;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, s);
    Configuration x(nb, d);
    DirectionVector v(nb, d);
    for (int k = 1; k <= nb; ++k) {
      x.block(k) = gaussian_vec(rng, d);
      v.block(k) = gaussian_vec(rng, d);
    }
    double base = v.flat().dot(assemble_symbol(x, params).m * v.flat());
    for (size_t m = 0; m < maps.size(); ++m) {
      Configuration xl(Vec(maps[m].matrix * x.flat()), d);
      Vec vl = inv_t[m] * v.flat();
      double val = vl.dot(assemble_symbol(xl, params).m * vl);
      worst = std::max(worst, std::abs(val - base) / std::max(base, 1e-300));
    }
  }
  rep.max_ratio = worst;
  rep.pass = worst <= rep.constant;
  return rep;
}

namespace frozen {

// Calibration protocol: each constant below is the worst ratio observed by
// the matching check_* sampler at kCalibrationSeed, inflated by a margin,
// then rounded up.  The test suite re-runs the checks at kValidationSeed.
double degeneration_c(int n, int d, double xi) {
  if (d != 2) throw std::invalid_argument("degeneration_c: calibrated for d=2");
  // c such that lambda_min >= c * dist^xi held with margin 2x on calibration
  // (critical c at 2000 samples, seed 101: n=3 {0.53, 0.47, 0.29},
  //  n=4 {0.32, 0.29, 0.17} for xi in {0.5, 1.0, 1.5})
  struct Row { int n; double xi, c; };
  static const Row table[] = {
      {3, 0.5, 0.26}, {3, 1.0, 0.23}, {3, 1.5, 0.14},
      {4, 0.5, 0.16}, {4, 1.0, 0.14}, {4, 1.5, 0.08},
  };
  for (const Row& r : table)
    if (r.n == n && std::abs(r.xi - xi) < 1e-12) return r.c;
  throw std::invalid_argument("degeneration_c: no calibrated constant");
}

double cross_E(CrossLemma id, double xi) {
  // worst ratio at 20000 samples, seed 101, over xi in {0.5, 1.0, 1.5},
  // margin 2x.  cro4's bracket uses |x_i| in both factors, so its ratio
  // grows as xi decreases; the table is xi-resolved for that lemma.
  switch (id) {
    case CrossLemma::Cro1: return 3.2;
    case CrossLemma::Cro2: return 3.5;
    case CrossLemma::Cro3: return 3.5;
    case CrossLemma::Cro4:
      if (xi < 0.75) return 120.0;
      if (xi < 1.25) return 40.0;
      return 11.0;
    case CrossLemma::Cro5: return 0.7;
    case CrossLemma::Don: return 12.5;
  }
  throw std::logic_error("cross_E: unknown id");
}

double structure_lambda(int n) {
  // worst two-sided ratio 3.08 (n=3) / 3.10 (n=4) at 20000 samples,
  // seed 101, over xi in {0.5, 1.0, 1.5}; margin 2x
  if (n == 3) return 6.2;
  if (n == 4) return 6.3;
  throw std::invalid_argument("structure_lambda: no calibrated constant");
}

// worst ratio 7.6 over both subspace families and xi in {0.5, 1.0, 1.5}
// at 100 centers, seed 101; margin 2x
double weight_C() { return 15.2; }

double bai_C(int l) {
  // deterministic quadrature sup over the radial grid; margin 1.5x
  if (l == 1) return 13.9;
  if (l == 2) return 4.7;
  throw std::invalid_argument("bai_C: l must be 1 or 2");
}

}  // namespace frozen

}  // namespace kraichnan
