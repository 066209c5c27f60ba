// Regenerates the frozen comparison constants used by the verifier module.
//
// Each sampler is run on the calibration seed with more samples than the
// test suite uses; the printed suggestion applies a safety margin (x2 for
// Monte Carlo samplers, x1.5 for deterministic quadrature).  The suggested
// values are frozen by hand into src/verifier.cpp and then validated on a
// different seed by the test and acceptance suites.

#include <cmath>
#include <cstdio>
#include <vector>

#include "kraichnan/verifier.hpp"

using namespace kraichnan;

int main() {
  const std::uint64_t seed = frozen::kCalibrationSeed;
  const std::vector<double> xis = {0.5, 1.0, 1.5};

  std::printf("== degeneration lower constants c(n, d=2, xi) ==\n");
  for (int n : {3, 4}) {
    for (double xi : xis) {
      SymbolParams p(n, 2, xi);
      CheckReport r = check_degeneration(p, 2000, 1e-10, seed, 1.0);
      std::printf("n=%d xi=%.1f  critical c=%.6g  suggest c=%.6g\n", n, xi,
                  1.0 / r.max_ratio, 0.5 / r.max_ratio);
    }
  }

  std::printf("\n== cross lemma constants E ==\n");
  const char* names[] = {"cro1", "cro2", "cro3", "cro4", "cro5", "don"};
  for (CrossLemma id : {CrossLemma::Cro1, CrossLemma::Cro2, CrossLemma::Cro3,
                        CrossLemma::Cro4, CrossLemma::Cro5, CrossLemma::Don}) {
    for (double xi : xis) {
      SymbolParams p(id == CrossLemma::Cro1 ? 3 : 4, 2, xi);
      CheckReport r = check_cross_lemma(id, p, 20000, 1e300, seed);
      std::printf("%s xi=%.1f  max ratio=%.6g  suggest E=%.6g\n",
                  names[static_cast<int>(id)], xi, r.max_ratio,
                  2.0 * r.max_ratio);
    }
  }

  std::printf("\n== structure comparability lambda ==\n");
  for (int n : {3, 4}) {
    double worst = 0.0;
    for (double xi : xis) {
      SymbolParams p(n, 2, xi);
      Configuration x(n - 1, 2);
      x.block(2)[0] = 1.0;  // (0, e1) resp. (0, e1, 0)
      CheckReport r = check_structure(x, p, 0.1, 20000, 1e300, seed);
      worst = std::max(worst, r.max_ratio);
      std::printf("n=%d xi=%.1f  max ratio=%.6g\n", n, xi, r.max_ratio);
    }
    std::printf("n=%d  suggest lambda=%.6g\n", n, 2.0 * worst);
  }

  std::printf("\n== weight constant C ==\n");
  {
    double worst = 0.0;
    WeightSpec origin;
    origin.ambient_dim = 2;
    WeightSpec windows;
    windows.ambient_dim = 4;
    Mat n1 = Mat::Zero(2, 4), n2 = Mat::Zero(2, 4), n3 = Mat::Zero(2, 4);
    n1.block(0, 0, 2, 2) = Mat::Identity(2, 2);
    n2.block(0, 2, 2, 2) = Mat::Identity(2, 2);
    n3.block(0, 0, 2, 2) = Mat::Identity(2, 2) / std::sqrt(2.0);
    n3.block(0, 2, 2, 2) = Mat::Identity(2, 2) / std::sqrt(2.0);
    windows.normals = {n1, n2, n3};
    for (const WeightSpec* F : {&origin, &windows}) {
      for (double xi : xis) {
        CheckReport r = check_weight(*F, xi, 100, seed, 1e300);
        worst = std::max(worst, r.max_ratio);
        std::printf("dim=%d xi=%.1f  max ratio=%.6g\n", F->ambient_dim, xi,
                    r.max_ratio);
      }
    }
    std::printf("suggest C=%.6g\n", 2.0 * worst);
  }

  std::printf("\n== convolution constants C(l) ==\n");
  {
    std::vector<Vec> grid;
    for (double r : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0}) {
      Vec x = Vec::Zero(2);
      x[0] = r;
      grid.push_back(x);
    }
    for (int l : {1, 2}) {
      CheckReport r = check_bai(l, 2, 1.0, grid, 1e300);
      std::printf("l=%d  max ratio=%.6g  suggest C=%.6g  (%s)\n", l,
                  r.max_ratio, 1.5 * r.max_ratio, r.note.c_str());
    }
  }
  return 0;
}
