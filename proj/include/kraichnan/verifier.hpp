#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kraichnan/fit.hpp"
#include "kraichnan/symbol.hpp"

namespace kraichnan {

/// Result of a sampled inequality check.  pass == (max_ratio <= constant);
/// fully reproducible from (name, samples, seed).
struct CheckReport {
  std::string name;
  int samples = 0;
  double max_ratio = 0.0;
  double constant = 0.0;  // frozen comparison constant
  bool pass = false;
  std::uint64_t seed = 0;
  std::string note;
};

enum class CrossLemma { Cro1, Cro2, Cro3, Cro4, Cro5, Don };

/// Degeneration set: on-set samples must have lambda_min <= tol * ||sigma||,
/// off-set samples at distance delta in [0.1, 1] must have
/// lambda_min >= c_lower * delta^xi.
CheckReport check_degeneration(const SymbolParams& params, int samples,
                               double tol, std::uint64_t seed, double c_lower);

/// Samples configurations satisfying the chosen cross-term hypothesis exactly
/// and compares |cross term| against E_frozen times the matching bracket.
CheckReport check_cross_lemma(CrossLemma id, const SymbolParams& params,
                              int samples, double E_frozen, std::uint64_t seed);

/// Comparability of sigma(M_n) near a degeneration point x against the block
/// model built from x's vanishing-block pattern: direct sums of lower-order
/// symbols on the vanishing runs plus identity on the rest.
CheckReport check_structure(const Configuration& x, const SymbolParams& params,
                            double radius, int samples, double lambda_frozen,
                            std::uint64_t seed);

/// A finite union of subspaces given by orthonormal normal-space bases
/// (each Mat has codim rows, ambient_dim columns); empty list means F = {0}.
struct WeightSpec {
  int ambient_dim = 0;
  std::vector<Mat> normals;

  double distance(const Vec& x) const;
};

/// Two-regime volume formula, doubling, and A2 for w(x) = dist(x,F)^xi,
/// by Monte Carlo ball integration.
CheckReport check_weight(const WeightSpec& F, double xi, int samples,
                         std::uint64_t seed, double C_frozen);

/// Convolution inequalities by adaptive quadrature: l=1 is the unit-ball
/// convolution against |x-y|^{2-xi-d}; l=2 is the k=1 case of the two-factor
/// inequality.  Passes if the sup of LHS/RHS over the grid is <= C_frozen
/// and stable under quadrature refinement.
CheckReport check_bai(int l, int d, double xi, const std::vector<Vec>& xgrid,
                      double C_frozen);

/// Exact value of the l=1 LHS at a point (semi-analytic radial reduction).
double bai_lhs(const Vec& x, int d, double xi, int max_depth = 12);

/// Quadratic-form invariance under all permutation-induced symmetry maps.
CheckReport check_symmetry(const SymbolParams& params, int samples,
                           std::uint64_t seed);

namespace frozen {
/// Calibrated comparison constants.  Each was fitted with the matching
/// check_* sampler on the calibration seed below, inflated by a safety
/// margin, and is validated in the test suite on a different seed.
constexpr std::uint64_t kCalibrationSeed = 101;
constexpr std::uint64_t kValidationSeed = 202;

double degeneration_c(int n, int d, double xi);
double cross_E(CrossLemma id, double xi);
double structure_lambda(int n);
double weight_C();
double bai_C(int l);
}  // namespace frozen

}  // namespace kraichnan
