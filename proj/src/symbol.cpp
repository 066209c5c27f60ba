#include "kraichnan/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace kraichnan {

Mat eval_d(const Vec& x, const SymbolParams& params) {
  const int d = params.d;
  const double xi = params.xi;
  const double r = x.norm();
  if (r == 0.0) return Mat::Zero(d, d);
  const double a = 1.0 + xi / (d - 1);
  const double b = xi / (d - 1);
  const double rxi = std::pow(r, xi);
  Vec xhat = x / r;
  Mat out = (a * rxi) * Mat::Identity(d, d);
  out.noalias() -= (b * rxi) * (xhat * xhat.transpose());
  return out;
}

std::vector<Mat> eval_d_grad(const Vec& x, const SymbolParams& params) {
  const int d = params.d;
  const double xi = params.xi;
  const double r = x.norm();
  if (r == 0.0)
    throw std::domain_error("eval_d_grad: derivative singular at x = 0");
  const double a = 1.0 + xi / (d - 1);
  const double b = xi / (d - 1);
  // d_{ab}(x) = a |x|^xi delta_{ab} - b |x|^{xi-2} x_a x_b
  const double rxm2 = std::pow(r, xi - 2.0);
  const double rxm4 = rxm2 / (r * r);
  std::vector<Mat> grad(d, Mat::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    Mat& g = grad[k];
    g = (a * xi * rxm2 * x[k]) * Mat::Identity(d, d);
    g.noalias() -= (b * (xi - 2.0) * rxm4 * x[k]) * (x * x.transpose());
    g.row(k) -= b * rxm2 * x.transpose();
    g.col(k) -= b * rxm2 * x;
  }
  return grad;
}

Mat cross_block(int i, int j, const Configuration& x, const SymbolParams& params) {
  const int nb = x.blocks();
  if (i < 1 || j < i || j > nb)
    throw std::out_of_range("cross_block: indices out of range");
  Mat out = eval_d(x.partial_sum(i, j), params);
  if (j > i) {
    out -= eval_d(x.partial_sum(i, j - 1), params);
    out -= eval_d(x.partial_sum(i + 1, j), params);
    out += eval_d(x.partial_sum(i + 1, j - 1), params);
  }
  return out;
}

static Vec subset_sum(const std::vector<int>& A, const Configuration& x) {
  Vec s = Vec::Zero(x.d());
  for (int k : A) s += x.block(k);
  return s;
}

double gamma_subset(const std::vector<int>& A, const Configuration& x,
                    const DirectionVector& v, const SymbolParams& params) {
  if (A.empty()) throw std::invalid_argument("gamma_subset: empty subset");
  std::vector<int> a(A);
  std::sort(a.begin(), a.end());
  const int i = a.front();
  const int j = a.back();
  std::vector<int> no_min(a.begin() + 1, a.end());
  std::vector<int> no_max(a.begin(), a.end() - 1);
  std::vector<int> no_both =
      a.size() >= 2 ? std::vector<int>(a.begin() + 1, a.end() - 1) : std::vector<int>{};
  auto dofsum = [&](const std::vector<int>& s) {
    return s.empty() ? Mat::Zero(x.d(), x.d()).eval()
                     : eval_d(subset_sum(s, x), params);
  };
  Mat block = dofsum(a) - dofsum(no_min) - dofsum(no_max) + dofsum(no_both);
  return v.block(i).dot(block * v.block(j));
}

SymbolMatrix assemble_symbol(const Configuration& x, const SymbolParams& params) {
  const int nb = x.blocks();
  const int d = params.d;
  SymbolMatrix S{Mat::Zero(nb * d, nb * d), d};
  for (int i = 1; i <= nb; ++i) {
    for (int j = i; j <= nb; ++j) {
      Mat B = cross_block(i, j, x, params);
      if (i == j) {
        S.m.block((i - 1) * d, (i - 1) * d, d, d) = B;
      } else {
        S.m.block((i - 1) * d, (j - 1) * d, d, d) = 0.5 * B;
        S.m.block((j - 1) * d, (i - 1) * d, d, d) = 0.5 * B.transpose();
      }
    }
  }
  return S;
}

std::vector<Mat> symbol_gradient(const Configuration& x, const SymbolParams& params) {
  const int nb = x.blocks();
  const int d = params.d;
  const int dim = nb * d;
  std::vector<Mat> grad(dim, Mat::Zero(dim, dim));
  // Each block (i,j) is a +/- combination of d at the windows [i,j], [i,j-1],
  // [i+1,j], [i+1,j-1]; a window [a,b] depends on x_k iff a <= k <= b.
  auto add_window = [&](int i, int j, int a, int b, double sign) {
    if (b < a) return;
    Vec w = x.partial_sum(a, b);
    if (w.norm() == 0.0) {
      if (params.xi <= 1.0)
        throw std::domain_error("symbol_gradient: window sum on Dgn");
      return;  // gradient of d vanishes at 0 for xi > 1
    }
    std::vector<Mat> dg = eval_d_grad(w, params);
    const double h = (i == j) ? sign : 0.5 * sign;
    for (int k = a; k <= b; ++k) {
      for (int c = 0; c < d; ++c) {
        Mat& g = grad[(k - 1) * d + c];
        g.block((i - 1) * d, (j - 1) * d, d, d) += h * dg[c];
        if (i != j)
          g.block((j - 1) * d, (i - 1) * d, d, d) += h * dg[c].transpose();
      }
    }
  };
  for (int i = 1; i <= nb; ++i) {
    for (int j = i; j <= nb; ++j) {
      add_window(i, j, i, j, 1.0);
      if (j > i) {
        add_window(i, j, i, j - 1, -1.0);
        add_window(i, j, i + 1, j, -1.0);
        add_window(i, j, i + 1, j - 1, 1.0);
      }
    }
  }
  return grad;
}

Configuration translation_reduce(const std::vector<Vec>& y) {
  if (y.size() < 2)
    throw std::invalid_argument("translation_reduce: need at least 2 points");
  const int d = static_cast<int>(y[0].size());
  Configuration x(static_cast<int>(y.size()) - 1, d);
  for (size_t i = 0; i + 1 < y.size(); ++i)
    x.block(static_cast<int>(i) + 1) = y[i] - y[i + 1];
  return x;
}

std::vector<SymmetryMap> symmetries(int n, int d) {
  if (n > 7) throw std::invalid_argument("symmetries: n > 7 not enumerable");
  if (n < 2) throw std::invalid_argument("symmetries: n < 2");
  // A permutation pi of the points y_1..y_n acts on reduced coordinates by
  // x'_i = y_{pi(i)} - y_{pi(i+1)}, a signed window sum of the x_k.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<SymmetryMap> maps;
  do {
    Mat M = Mat::Zero((n - 1) * d, (n - 1) * d);
    for (int i = 0; i < n - 1; ++i) {
      int a = perm[i], b = perm[i + 1];
      // y_a - y_b = sum_{k=a}^{b-1} x_k if a < b, minus the reverse sum if a > b
      int lo = std::min(a, b), hi = std::max(a, b);
      double sign = (a < b) ? 1.0 : -1.0;
      for (int k = lo; k < hi; ++k)
        M.block(i * d, k * d, d, d) = sign * Mat::Identity(d, d);
    }
    maps.push_back(SymmetryMap{std::move(M), perm, {}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return maps;
}

SymmetryMap window_map(const std::vector<std::pair<int, int>>& tuples, int n, int d) {
  if (static_cast<int>(tuples.size()) != n - 1)
    throw std::invalid_argument("window_map: need n-1 tuples");
  Mat M = Mat::Zero((n - 1) * d, (n - 1) * d);
  for (int r = 0; r < n - 1; ++r) {
    auto [i, j] = tuples[r];
    if (i < 1 || j < i || j > n - 1)
      throw std::invalid_argument("window_map: bad tuple");
    for (int k = i; k <= j; ++k)
      M.block(r * d, (k - 1) * d, d, d) = Mat::Identity(d, d);
  }
  if (M.fullPivLu().rank() < (n - 1) * d)
    throw std::invalid_argument("window_map: map not invertible");
  return SymmetryMap{std::move(M), {}, tuples};
}

double min_eigenvalue(const SymbolMatrix& S) {
  if (!S.m.allFinite())
    throw std::invalid_argument("min_eigenvalue: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Mat> es(S.m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

int rank_at(const Configuration& x, const SymbolParams& params, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rank_at: tol must be > 0");
  SymbolMatrix S = assemble_symbol(x, params);
  Eigen::SelfAdjointEigenSolver<Mat> es(S.m, Eigen::EigenvaluesOnly);
  int below = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] < tol) ++below;
  if (below % params.d != 0)
    throw std::runtime_error(
        "rank_at: eigenvalue count below tol is not a multiple of d; "
        "tol straddles a spectral transition");
  return below / params.d;
}

double degeneration_distance(const Configuration& x) {
  const int nb = x.blocks();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= nb; ++i) {
    for (int j = i; j <= nb; ++j) {
      double dist = x.partial_sum(i, j).norm() / std::sqrt(double(j - i + 1));
      best = std::min(best, dist);
    }
  }
  return best;
}

double metric_surrogate(const Vec& x, const Vec& y, int l, int d, double xi) {
  if (x.size() != y.size())
    throw std::invalid_argument("metric_surrogate: dimension mismatch");
  const int cut = l * d;
  const double r1 = (x.head(cut) - y.head(cut)).norm();
  const double r2 = (x.tail(x.size() - cut) - y.tail(y.size() - cut)).norm();
  return std::sqrt(std::max(std::pow(r1, 2.0 - xi), r2 * r2));
}

}  // namespace kraichnan
