#include <doctest.h>

#include <cmath>

#include "kraichnan/rng.hpp"
#include "kraichnan/symbol.hpp"

using namespace kraichnan;

namespace {

Vec e1(int d) {
  Vec v = Vec::Zero(d);
  v[0] = 1.0;
  return v;
}

Vec e2(int d) {
  Vec v = Vec::Zero(d);
  v[1] = 1.0;
  return v;
}

Vec gaussian_vec(Rng& rng, int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.next_normal();
  return v;
}

}  // namespace

TEST_CASE("SymbolParams validates its ranges") {
  CHECK_THROWS(SymbolParams(1, 2, 1.0));
  CHECK_THROWS(SymbolParams(2, 1, 1.0));
  CHECK_THROWS(SymbolParams(2, 2, 0.0));
  CHECK_THROWS(SymbolParams(2, 2, 2.0));
  CHECK_THROWS(SymbolParams(40, 2, 1.0));  // (n-1)d > 64
  CHECK_NOTHROW(SymbolParams(4, 2, 0.5));
}

TEST_CASE("eval_d closed form") {
  SymbolParams p(2, 2, 1.0);

  SUBCASE("zero at the origin") {
    CHECK(eval_d(Vec::Zero(2), p) == Mat::Zero(2, 2));
  }

  SUBCASE("frozen value at (1,0): diag(1,2)") {
    Mat m = eval_d(e1(2), p);
    CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("trace |x|^xi (d+xi): 3 on the unit circle") {
    Vec x(2);
    x << std::cos(0.7), std::sin(0.7);
    CHECK(eval_d(x, p).trace() == doctest::Approx(3.0).epsilon(1e-13));
  }

  SUBCASE("homogeneity of degree xi") {
    Rng rng(7, 0);
    for (int s = 0; s < 20; ++s) {
      Vec x = gaussian_vec(rng, 2);
      for (double lam : {0.5, 2.0, 10.0}) {
        Mat a = eval_d(lam * x, p);
        Mat b = std::pow(lam, p.xi) * eval_d(x, p);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * b.cwiseAbs().maxCoeff());
      }
    }
  }

  SUBCASE("eigenvalues |x|^xi along xhat, (1+xi/(d-1))|x|^xi across") {
    Rng rng(8, 0);
    Vec x = gaussian_vec(rng, 3);
    SymbolParams p3(2, 3, 0.7);
    double rxi = std::pow(x.norm(), 0.7);
    Mat m = eval_d(x, p3);
    CHECK((m * x - rxi * x).norm() < 1e-12 * rxi * x.norm());
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(rxi).epsilon(1e-12));
    CHECK(es.eigenvalues().maxCoeff() ==
          doctest::Approx((1.0 + 0.7 / 2.0) * rxi).epsilon(1e-12));
  }

  SUBCASE("quadrature cross-check of the Fourier normalization") {
    // The longitudinal component of d along xhat must equal |x|^xi: check
    // d(x) xhat = |x|^xi xhat at several radii and xi values.
    for (double xi : {0.5, 1.0, 1.5}) {
      SymbolParams q(2, 2, xi);
      for (double r : {0.3, 1.0, 4.0}) {
        Vec x(2);
        x << r * std::cos(1.1), r * std::sin(1.1);
        Vec lhs = eval_d(x, q) * (x / r);
        Vec rhs = std::pow(r, xi) * (x / r);
        CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
      }
    }
  }
}

TEST_CASE("eval_d_grad matches central finite differences") {
  for (double xi : {0.5, 1.0, 1.5}) {
    SymbolParams p(2, 2, xi);
    Rng rng(11, 0);
    for (int s = 0; s < 10; ++s) {
      Vec x = gaussian_vec(rng, 2);
      double r = x.norm();
      if (r < 0.5 || r > 2.0) {
        x *= 1.0 / r;  // keep |x| in the validated band
      }
      auto grad = eval_d_grad(x, p);
      const double h = 1e-5;
      for (int k = 0; k < 2; ++k) {
        Vec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        Mat fd = (eval_d(xp, p) - eval_d(xm, p)) / (2.0 * h);
        double scale = std::max(1e-12, fd.cwiseAbs().maxCoeff());
        CHECK((grad[k] - fd).cwiseAbs().maxCoeff() < 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("eval_d_grad invariants") {
  SymbolParams p(2, 2, 1.0);
  CHECK_THROWS(eval_d_grad(Vec::Zero(2), p));

  SUBCASE("column divergence vanishes (incompressibility)") {
    Rng rng(13, 0);
    for (int s = 0; s < 50; ++s) {
      Vec x = gaussian_vec(rng, 2);
      auto grad = eval_d_grad(x, p);
      for (int beta = 0; beta < 2; ++beta) {
        double div = 0.0;
        for (int alpha = 0; alpha < 2; ++alpha) div += grad[alpha](alpha, beta);
        CHECK(std::abs(div) < 1e-12 * (1.0 + std::pow(x.norm(), p.xi - 1.0)));
      }
    }
  }

  SUBCASE("homogeneity of degree xi-1") {
    Rng rng(14, 0);
    Vec x = gaussian_vec(rng, 2);
    auto g1 = eval_d_grad(2.0 * x, p);
    auto g2 = eval_d_grad(x, p);
    for (int k = 0; k < 2; ++k) {
      Mat want = std::pow(2.0, p.xi - 1.0) * g2[k];
      CHECK((g1[k] - want).cwiseAbs().maxCoeff() <
            1e-12 * (1.0 + want.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("cross_block") {
  SymbolParams p(3, 2, 1.0);
  Configuration x(2, 2);
  x.block(1) = e1(2);
  x.block(2) = e1(2);

  SUBCASE("diagonal block is eval_d of the block") {
    CHECK((cross_block(1, 1, x, p) - eval_d(e1(2), p)).cwiseAbs().maxCoeff() ==
          0.0);
  }

  SUBCASE("degree-1 homogeneity cancels the aligned cross term") {
    CHECK(cross_block(1, 2, x, p).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("matches d(x1+x2) - d(x1) - d(x2)") {
    Rng rng(15, 0);
    Configuration y(2, 2);
    y.block(1) = gaussian_vec(rng, 2);
    y.block(2) = gaussian_vec(rng, 2);
    Mat want = eval_d(y.partial_sum(1, 2), p) - eval_d(y.block(1), p) -
               eval_d(y.block(2), p);
    CHECK((cross_block(1, 2, y, p) - want).cwiseAbs().maxCoeff() < 1e-14);
  }

  CHECK_THROWS(cross_block(0, 1, x, p));
  CHECK_THROWS(cross_block(1, 3, x, p));
}

TEST_CASE("gamma_subset") {
  SymbolParams p(4, 2, 1.0);
  Rng rng(16, 0);
  Configuration x(3, 2);
  DirectionVector v(3, 2);
  for (int k = 1; k <= 3; ++k) {
    x.block(k) = gaussian_vec(rng, 2);
    v.block(k) = gaussian_vec(rng, 2);
  }

  SUBCASE("singleton is the diagonal form") {
    double got = gamma_subset({2}, x, v, p);
    double want = v.block(2).dot(eval_d(x.block(2), p) * v.block(2));
    CHECK(got == doctest::Approx(want).epsilon(1e-13));
  }

  SUBCASE("full interval equals the cross_block form") {
    double got = gamma_subset({1, 2, 3}, x, v, p);
    double want = v.block(1).dot(cross_block(1, 3, x, p) * v.block(3));
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }

  SUBCASE("sum of all gammas reassembles the quadratic form") {
    double total = 0.0;
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j) {
        std::vector<int> full;
        for (int k = i; k <= j; ++k) full.push_back(k);
        total += gamma_subset(full, x, v, p);
      }
    double form = v.flat().dot(assemble_symbol(x, p).m * v.flat());
    CHECK(total == doctest::Approx(form).epsilon(1e-12));
  }

  CHECK_THROWS(gamma_subset({}, x, v, p));
}

TEST_CASE("assemble_symbol") {
  SUBCASE("n=2 reduces to eval_d") {
    SymbolParams p(2, 2, 1.0);
    Rng rng(17, 0);
    Configuration x(Vec(gaussian_vec(rng, 2)), 2);
    CHECK((assemble_symbol(x, p).m - eval_d(x.flat(), p)).cwiseAbs().maxCoeff() <
          1e-15);
  }

  SUBCASE("frozen n=3 aligned example: diag(1,2,1,2)") {
    SymbolParams p(3, 2, 1.0);
    Configuration x(2, 2);
    x.block(1) = e1(2);
    x.block(2) = e1(2);
    Mat want = Mat::Zero(4, 4);
    want.diagonal() << 1, 2, 1, 2;
    CHECK((assemble_symbol(x, p).m - want).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("PSD and homogeneity on random configurations") {
    for (int n : {2, 3, 4}) {
      SymbolParams p(n, 2, 0.8);
      Rng rng(18, n);
      for (int s = 0; s < 200; ++s) {
        Configuration x(n - 1, 2);
        DirectionVector v(n - 1, 2);
        for (int k = 1; k < n; ++k) {
          x.block(k) = gaussian_vec(rng, 2);
          v.block(k) = gaussian_vec(rng, 2);
        }
        SymbolMatrix S = assemble_symbol(x, p);
        double nrm = S.m.cwiseAbs().maxCoeff();
        CHECK(v.flat().dot(S.m * v.flat()) > -1e-10 * nrm * v.flat().squaredNorm());
        CHECK((S.m - S.m.transpose()).cwiseAbs().maxCoeff() < 1e-14 * nrm);
        Configuration x2(Vec(2.0 * x.flat()), 2);
        Mat want = std::pow(2.0, p.xi) * S.m;
        CHECK((assemble_symbol(x2, p).m - want).cwiseAbs().maxCoeff() <
              1e-12 * nrm);
      }
    }
  }

  SUBCASE("upper bound C_up |x|^xi |v|^2") {
    SymbolParams p(3, 2, 1.0);
    // C_up computed once as the sup of the form over the product of unit
    // spheres, then validated on fresh samples with margin for sampling gaps
    Rng rng(19, 0);
    double c_up = 0.0;
    for (int s = 0; s < 3000; ++s) {
      Configuration x(2, 2);
      DirectionVector v(2, 2);
      for (int k = 1; k <= 2; ++k) {
        x.block(k) = gaussian_vec(rng, 2);
        v.block(k) = gaussian_vec(rng, 2);
      }
      x.flat() /= x.flat().norm();
      v.flat() /= v.flat().norm();
      c_up = std::max(c_up, v.flat().dot(assemble_symbol(x, p).m * v.flat()));
    }
    Rng rng2(20, 0);
    for (int s = 0; s < 500; ++s) {
      Configuration x(2, 2);
      DirectionVector v(2, 2);
      for (int k = 1; k <= 2; ++k) {
        x.block(k) = gaussian_vec(rng2, 2);
        v.block(k) = gaussian_vec(rng2, 2);
      }
      double form = v.flat().dot(assemble_symbol(x, p).m * v.flat());
      double bound = 1.05 * c_up * std::pow(x.flat().norm(), p.xi) *
                     v.flat().squaredNorm();
      CHECK(form <= bound);
    }
  }
}

TEST_CASE("translation_reduce") {
  SUBCASE("constant input reduces to zero") {
    Vec a(2);
    a << 3.0, -1.0;
    Configuration x = translation_reduce({a, a, a});
    CHECK(x.flat().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("n=2 example") {
    Configuration x = translation_reduce({e1(2), Vec(Vec::Zero(2))});
    CHECK((x.flat() - e1(2)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("translation invariance") {
    Rng rng(21, 0);
    std::vector<Vec> y;
    for (int i = 0; i < 4; ++i) y.push_back(gaussian_vec(rng, 2));
    Vec shift = gaussian_vec(rng, 2);
    std::vector<Vec> ys;
    for (const Vec& p : y) ys.push_back(p + shift);
    CHECK((translation_reduce(y).flat() - translation_reduce(ys).flat())
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }
}

TEST_CASE("symmetries") {
  CHECK_THROWS(symmetries(8, 2));
  CHECK_THROWS(symmetries(1, 2));

  SUBCASE("count and identity") {
    auto maps = symmetries(3, 2);
    CHECK(maps.size() == 6);
    // the identity permutation comes first from next_permutation ordering
    CHECK((maps[0].matrix - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("n=2 swap is the sign flip") {
    auto maps = symmetries(2, 2);
    CHECK(maps.size() == 2);
    CHECK((maps[1].matrix + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("quadratic-form invariance for all n=3 maps") {
    SymbolParams p(3, 2, 1.3);
    Rng rng(22, 0);
    for (const auto& m : symmetries(3, 2)) {
      Mat it = m.matrix.inverse().transpose();
      for (int s = 0; s < 50; ++s) {
        Configuration x(2, 2);
        DirectionVector v(2, 2);
        for (int k = 1; k <= 2; ++k) {
          x.block(k) = gaussian_vec(rng, 2);
          v.block(k) = gaussian_vec(rng, 2);
        }
        double base = v.flat().dot(assemble_symbol(x, p).m * v.flat());
        Configuration xl(Vec(m.matrix * x.flat()), 2);
        Vec vl = it * v.flat();
        double got = vl.dot(assemble_symbol(xl, p).m * vl);
        CHECK(got == doctest::Approx(base).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("window_map") {
  SUBCASE("identity tuples give the identity") {
    SymmetryMap m = window_map({{1, 1}, {2, 2}, {3, 3}}, 4, 2);
    CHECK((m.matrix - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("window tuples build partial-sum rows") {
    SymmetryMap m = window_map({{1, 2}, {2, 2}}, 3, 2);
    Rng rng(23, 0);
    Configuration x(2, 2);
    x.block(1) = gaussian_vec(rng, 2);
    x.block(2) = gaussian_vec(rng, 2);
    Vec y = m.matrix * x.flat();
    CHECK((y.segment(0, 2) - x.partial_sum(1, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((y.segment(2, 2) - x.block(2)).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("rejects singular maps") {
    CHECK_THROWS(window_map({{1, 2}, {1, 2}}, 3, 2));
  }
}

TEST_CASE("min_eigenvalue and rank_at") {
  SymbolParams p3(3, 2, 1.0);

  SUBCASE("zero matrix") {
    SymbolMatrix z{Mat::Zero(4, 4), 2};
    CHECK(min_eigenvalue(z) == 0.0);
  }

  SUBCASE("degenerate first block") {
    Configuration x(2, 2);
    x.block(2) = e1(2);
    CHECK(std::abs(min_eigenvalue(assemble_symbol(x, p3))) < 1e-12);
    CHECK(rank_at(x, p3, 1e-10) == 1);
  }

  SUBCASE("aligned example has min eigenvalue 1") {
    Configuration x(2, 2);
    x.block(1) = e1(2);
    x.block(2) = e1(2);
    CHECK(min_eigenvalue(assemble_symbol(x, p3)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rank_at(x, p3, 1e-10) == 0);
  }

  SUBCASE("vanishing window sum x_{1,2}") {
    Configuration x(2, 2);
    x.block(1) = e1(2);
    x.block(2) = -e1(2);
    CHECK(rank_at(x, p3, 1e-10) == 1);
  }

  SUBCASE("n=4 double degeneration") {
    SymbolParams p4(4, 2, 1.0);
    Configuration x(3, 2);
    x.block(2) = e1(2);
    CHECK(rank_at(x, p4, 1e-10) == 2);
  }

  CHECK_THROWS(rank_at(Configuration(2, 2), p3, 0.0));
}

TEST_CASE("degeneration_distance") {
  SUBCASE("zero on the degeneration set") {
    Configuration x(2, 2);
    x.block(1) = e1(2);
    x.block(2) = -e1(2);
    CHECK(degeneration_distance(x) == 0.0);
  }

  SUBCASE("frozen example min(1, 1, |e1+e2|/sqrt 2) = 1") {
    Configuration x(2, 2);
    x.block(1) = e1(2);
    x.block(2) = e2(2);
    CHECK(degeneration_distance(x) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("matches brute-force projection distance for single windows") {
    // distance to {x_{i,j} = 0} is |x_{i,j}|/sqrt(j-i+1): verify against
    // an explicit orthogonal projection
    Rng rng(24, 0);
    Configuration x(3, 2);
    for (int k = 1; k <= 3; ++k) x.block(k) = gaussian_vec(rng, 2);
    double best = 1e300;
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j) {
        Vec w = x.partial_sum(i, j);
        best = std::min(best, w.norm() / std::sqrt(double(j - i + 1)));
      }
    CHECK(degeneration_distance(x) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("metric_surrogate") {
  Vec x(4), y(4);
  x << 1, 2, 3, 4;
  y = x;
  CHECK(metric_surrogate(x, y, 1, 2, 1.0) == 0.0);

  SUBCASE("l=0 degenerates to the Euclidean distance") {
    Vec a = Vec::Zero(4), b(4);
    b << 3, 0, 4, 0;
    CHECK(metric_surrogate(a, b, 0, 2, 1.0) == doctest::Approx(5.0));
  }

  SUBCASE("rough branch: xi=1, |x1-y1|=4 gives 2") {
    Vec a = Vec::Zero(4), b = Vec::Zero(4);
    b[0] = 4.0;
    CHECK(metric_surrogate(a, b, 1, 2, 1.0) == doctest::Approx(2.0));
  }

  SUBCASE("symmetry") {
    Rng rng(25, 0);
    Vec a = gaussian_vec(rng, 4), b = gaussian_vec(rng, 4);
    CHECK(metric_surrogate(a, b, 1, 2, 0.7) ==
          doctest::Approx(metric_surrogate(b, a, 1, 2, 0.7)));
  }
}

TEST_CASE("symbol_gradient matches finite differences of the assembly") {
  for (double xi : {0.5, 1.0, 1.5}) {
    SymbolParams p(3, 2, xi);
    Rng rng(26, static_cast<std::uint64_t>(xi * 10));
    Configuration x(2, 2);
    for (int k = 1; k <= 2; ++k) x.block(k) = gaussian_vec(rng, 2);
    auto grad = symbol_gradient(x, p);
    const double h = 1e-6;
    for (int c = 0; c < 4; ++c) {
      Configuration xp = x, xm = x;
      xp.flat()[c] += h;
      xm.flat()[c] -= h;
      Mat fd = (assemble_symbol(xp, p).m - assemble_symbol(xm, p).m) / (2.0 * h);
      double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
      CHECK((grad[c] - fd).cwiseAbs().maxCoeff() < 1e-5 * scale);
    }
  }
}
