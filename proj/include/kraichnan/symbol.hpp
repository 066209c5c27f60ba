#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace kraichnan {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Model constants: n physical points, space dimension d, roughness xi.
struct SymbolParams {
  int n;
  int d;
  double xi;

  SymbolParams(int n_, int d_, double xi_) : n(n_), d(d_), xi(xi_) {
    if (n < 2) throw std::invalid_argument("SymbolParams: n must be >= 2");
    if (d < 2) throw std::invalid_argument("SymbolParams: d must be >= 2");
    if (!(xi > 0.0 && xi < 2.0))
      throw std::invalid_argument("SymbolParams: xi must be in (0,2)");
    if ((n - 1) * d > 64)
      throw std::invalid_argument("SymbolParams: (n-1)*d > 64 unsupported");
  }

  int reduced_dim() const { return (n - 1) * d; }
  int blocks() const { return n - 1; }
};

/// A point of reduced coordinate space R^{(n-1)d}, stored flat as n-1
/// blocks of R^d.  Block indices are 1-based to match the window-sum
/// conventions used throughout.
class BlockVector {
 public:
  BlockVector(int blocks, int d) : d_(d), v_(Vec::Zero(blocks * d)) {}
  BlockVector(Vec flat, int d) : d_(d), v_(std::move(flat)) {
    if (v_.size() % d_ != 0)
      throw std::invalid_argument("BlockVector: size not a multiple of d");
  }

  int blocks() const { return static_cast<int>(v_.size()) / d_; }
  int dim() const { return static_cast<int>(v_.size()); }
  int d() const { return d_; }

  Eigen::VectorBlock<Vec> block(int i) { return v_.segment((i - 1) * d_, d_); }
  Eigen::VectorBlock<const Vec> block(int i) const {
    return v_.segment((i - 1) * d_, d_);
  }

  /// Window sum x_{i,j} = x_i + ... + x_j.  Empty windows (j < i) give 0.
  Vec partial_sum(int i, int j) const {
    Vec s = Vec::Zero(d_);
    for (int k = i; k <= j; ++k) s += block(k);
    return s;
  }

  const Vec& flat() const { return v_; }
  Vec& flat() { return v_; }

 private:
  int d_;
  Vec v_;
};

using Configuration = BlockVector;
using DirectionVector = BlockVector;

/// The dense symmetric matrix sigma(M_n)(x) with its d x d block structure.
/// Off-diagonal blocks are stored halved so that v^T S v reproduces the
/// i <= j sum of cross terms.
struct SymbolMatrix {
  Mat m;
  int d;

  Eigen::Block<const Mat> block(int i, int j) const {
    return m.block((i - 1) * d, (j - 1) * d, d, d);
  }
};

/// An invertible linear map of reduced coordinate space that preserves the
/// block structure, together with the permutation of {1..n} that induced it
/// (empty for maps built from explicit window-index tuples).
struct SymmetryMap {
  Mat matrix;
  std::vector<int> permutation;          // of {0..n-1}; empty for L'_n maps
  std::vector<std::pair<int, int>> window_tuples;  // for maps of class L'_n
};

/// Structure function d(x) = |x|^xi ((1+xi/(d-1)) I - (xi/(d-1)) xhat xhat^T).
Mat eval_d(const Vec& x, const SymbolParams& params);

/// Analytic gradient grad[k](a,b) = d/dx_k d_{ab}(x).  Rejects x = 0.
std::vector<Mat> eval_d_grad(const Vec& x, const SymbolParams& params);

/// Coupling block B_ij = d(x_{i,j}) - d(x_{i,j-1}) - d(x_{i+1,j}) + d(x_{i+1,j-1}).
Mat cross_block(int i, int j, const Configuration& x, const SymbolParams& params);

/// gamma_A for a window subset A (min A = i, max A = j).
double gamma_subset(const std::vector<int>& A, const Configuration& x,
                    const DirectionVector& v, const SymbolParams& params);

SymbolMatrix assemble_symbol(const Configuration& x, const SymbolParams& params);

/// Derivative of the assembled symbol: out[k] = d(sigma)/d(x_flat[k]).
std::vector<Mat> symbol_gradient(const Configuration& x, const SymbolParams& params);

/// Reduced coordinates x_i = y_i - y_{i+1} from n absolute points.
Configuration translation_reduce(const std::vector<Vec>& y);

/// All permutation-induced symmetry maps L_n L L_n^{-1}.  n <= 7.
std::vector<SymmetryMap> symmetries(int n, int d);

/// Map of class L'_n from explicit window tuples (i_k, j_k), 1-based.
SymmetryMap window_map(const std::vector<std::pair<int, int>>& tuples, int n, int d);

double min_eigenvalue(const SymbolMatrix& S);

/// Zero-eigenspace dimension divided by d.  Throws if the eigenvalue count
/// below tol is not a multiple of d (tol straddles a transition).
int rank_at(const Configuration& x, const SymbolParams& params, double tol);

/// Exact Euclidean distance to the degeneration set, i.e. the minimum over
/// windows of |x_{i,j}| / sqrt(j-i+1).
double degeneration_distance(const Configuration& x);

/// sqrt(max{|x1-y1|^{2-xi}, |x2-y2|^2}) for the block split (first l*d
/// coordinates rough, rest Euclidean).
double metric_surrogate(const Vec& x, const Vec& y, int l, int d, double xi);

}  // namespace kraichnan
