#include <doctest.h>

#include <cmath>

#include "kraichnan/estimators.hpp"
#include "kraichnan/hopf.hpp"

using namespace kraichnan;

namespace {

SymbolParams p2() { return SymbolParams(2, 2, 1.0); }

Configuration start2(double r) {
  Configuration x(1, 2);
  x.block(1)[0] = r;
  return x;
}

RadialForcing unit_ball() {
  return {[](double r) { return r <= 1.0 ? 1.0 : 0.0; }, 1.0};
}

}  // namespace

TEST_CASE("radial_f2_oracle") {
  SUBCASE("frozen value: d=2, xi=1, unit ball, r=2 gives 1/4") {
    CHECK(radial_f2_oracle(2.0, unit_ball(), p2()) ==
          doctest::Approx(0.25).epsilon(1e-8));
  }

  SUBCASE("closed form outside the support: F(r) = I(R) r^{2-d-xi}/(d+xi-2)") {
    for (double xi : {0.5, 1.0, 1.5}) {
      SymbolParams p(2, 2, xi);
      double inner = 0.5;  // int_0^1 s ds in d=2
      for (double r : {1.0, 2.0, 8.0}) {
        double want = inner * std::pow(r, -xi) / xi;
        CHECK(radial_f2_oracle(r, unit_ball(), p) ==
              doctest::Approx(want).epsilon(1e-8));
      }
    }
  }

  SUBCASE("tail slope is exactly 2-xi-d") {
    std::vector<FitPoint> pts;
    for (double r : {1.0, 2.0, 4.0, 8.0})
      pts.push_back({r, radial_f2_oracle(r, unit_ball(), p2()), 0.0});
    FitResult fr = fit_exponent(pts);
    CHECK(fr.slope == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(fr.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("monotone nonincreasing, vanishing at infinity") {
    double prev = radial_f2_oracle(0.0, unit_ball(), p2());
    for (double r : {0.25, 0.5, 1.0, 2.0, 10.0, 100.0}) {
      double v = radial_f2_oracle(r, unit_ball(), p2());
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
    CHECK(prev < 1e-2);
  }

  SUBCASE("rejects non-integrable parameters") {
    // d + xi <= 2 cannot arise from valid SymbolParams (d >= 2, xi > 0),
    // so exercise the guard directly through the interpolant builder
    CHECK_THROWS(F2Interpolant(unit_ball(), p2(), 4));
  }
}

TEST_CASE("F2Interpolant matches the oracle") {
  for (double xi : {0.5, 1.0}) {
    SymbolParams p(2, 2, xi);
    F2Interpolant interp(unit_ball(), p);
    for (double r : {0.0, 0.1, 0.5, 0.9, 1.0, 1.7, 3.0, 20.0}) {
      double want = radial_f2_oracle(r, unit_ball(), p);
      CHECK(interp(r) == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("semigroup_apply") {
  SdeConfig cfg{p2()};
  cfg.paths = 500;
  cfg.dt_base = 1e-3;

  SUBCASE("conservation: f == 1 gives exactly 1") {
    ValueWithError v =
        semigroup_apply([](const Vec&) { return 1.0; }, start2(1.0), 0.05, cfg);
    CHECK(v.value == 1.0);
    CHECK(v.stderr_ == 0.0);
  }

  SUBCASE("zero function and positivity") {
    ValueWithError z =
        semigroup_apply([](const Vec&) { return 0.0; }, start2(1.0), 0.05, cfg);
    CHECK(z.value == 0.0);
    ValueWithError pos = semigroup_apply(
        [](const Vec& x) { return x.squaredNorm(); }, start2(1.0), 0.05, cfg);
    CHECK(pos.value >= 0.0);
  }

  SUBCASE("contraction: |Pf| <= sup|f|") {
    ValueWithError v = semigroup_apply(
        [](const Vec& x) { return std::tanh(x[0]); }, start2(1.0), 0.1, cfg);
    CHECK(std::abs(v.value) <= 1.0);
  }
}

TEST_CASE("heat_kernel_density") {
  SdeConfig cfg{p2()};
  cfg.paths = 2000;
  cfg.dt_base = 1e-3;

  GridSpec grid;
  grid.lo = Vec(2);
  grid.hi = Vec(2);
  grid.lo << 0.0, -1.0;
  grid.hi << 2.0, 1.0;
  grid.shape = {10, 10};

  SUBCASE("t -> 0 concentrates at the start point") {
    SdeConfig c2 = cfg;
    c2.dt_base = 1e-7;
    c2.adapt_floor = 1e-10;
    GridSpec tight;
    tight.lo = Vec(2);
    tight.hi = Vec(2);
    tight.lo << 0.5, -0.5;
    tight.hi << 1.5, 0.5;
    tight.shape = {11, 11};
    DensityGrid dg = heat_kernel_density(start2(1.0), 1e-6, c2, tight);
    // value at the center cell (containing x0) dominates every cell at
    // distance > 0.1
    double at_x0 = 0.0, far = 0.0;
    for (size_t i = 0; i < dg.values.size(); ++i) {
      double dist = (dg.centers[i] - start2(1.0).flat()).norm();
      if (dist < 0.05) at_x0 = std::max(at_x0, dg.values[i]);
      if (dist > 0.1) far = std::max(far, dg.values[i]);
    }
    CHECK(at_x0 > 10.0 * far);
  }

  SUBCASE("nonnegative values and total mass <= 1 + tolerance") {
    DensityGrid dg = heat_kernel_density(start2(1.0), 0.05, cfg, grid);
    double mass = 0.0, err = 0.0;
    for (size_t i = 0; i < dg.values.size(); ++i) {
      CHECK(dg.values[i] >= 0.0);
      mass += dg.values[i];
      err += dg.stderr_[i];
    }
    mass *= grid.cell_volume();
    err *= grid.cell_volume();
    CHECK(mass <= 1.0 + 3.0 * err + 0.05);
  }

  SUBCASE("insufficient data in a far-away grid") {
    GridSpec far;
    far.lo = Vec(2);
    far.hi = Vec(2);
    far.lo << 500.0, 500.0;
    far.hi << 501.0, 501.0;
    far.shape = {2, 2};
    CHECK_THROWS(heat_kernel_density(start2(1.0), 0.01, cfg, far));
  }
}

TEST_CASE("green_apply") {
  SdeConfig cfg{p2()};
  cfg.paths = 4000;
  cfg.dt_base = 5e-3;
  cfg.t_max = 50.0;
  cfg.seed = 12;
  Observable ball = [](const Vec& x) { return x.norm() <= 1.0 ? 1.0 : 0.0; };

  SUBCASE("zero forcing gives zero") {
    GreenSample g = green_apply([](const Vec&) { return 0.0; }, start2(2.0), cfg);
    CHECK(g.value == 0.0);
    CHECK(g.tail_bound == 0.0);
  }

  SUBCASE("matches the radial oracle at |x0| = 2 within tolerance") {
    GreenSample g = green_apply(ball, start2(2.0), cfg);
    double want = 0.25;
    CHECK(g.value + g.tail_bound ==
          doctest::Approx(want).epsilon(std::max(0.10, 5.0 * g.stderr_ / want)));
    CHECK(g.value >= 0.0);
    CHECK(g.tail_bound >= 0.0);
  }

  SUBCASE("linearity in the forcing") {
    GreenSample g1 = green_apply(ball, start2(2.0), cfg);
    GreenSample g3 = green_apply(
        [&ball](const Vec& x) { return 3.0 * ball(x); }, start2(2.0), cfg);
    CHECK(g3.value == doctest::Approx(3.0 * g1.value).epsilon(1e-12));
  }
}

TEST_CASE("green_density") {
  SdeConfig cfg{p2()};
  cfg.paths = 4000;
  cfg.dt_base = 5e-3;
  cfg.t_max = 30.0;
  std::vector<double> edges = {0.5, 1.0, 1.6, 2.5, 4.0};

  SUBCASE("far shells see nothing") {
    std::vector<double> far_edges = {400.0, 500.0};
    CHECK_THROWS(green_density(start2(1.0), far_edges, cfg));
  }

  SUBCASE("cone exclusion marks inner shells NaN") {
    std::vector<double> inner = {0.0, 0.2, 1.0, 2.0};
    RadialDensity rd = green_density(start2(1.0), inner, cfg, 0.25);
    CHECK(std::isnan(rd.values[0]));  // outer edge 0.2 <= 0.25*|x0|
    CHECK(std::isfinite(rd.values[1]));
  }

  SUBCASE("density positive and decaying on mid shells") {
    RadialDensity rd = green_density(start2(1.0), edges, cfg, 0.25);
    for (size_t i = 0; i < rd.values.size(); ++i) CHECK(rd.values[i] >= 0.0);
    CHECK(rd.values.front() > rd.values.back());
  }
}

TEST_CASE("estimate_E") {
  SymbolParams p(2, 2, 1.0);

  SUBCASE("frozen: d=2, xi=1, C=1, t=1, x=y=0 gives 1") {
    Vec z = Vec::Zero(2);
    CHECK(estimate_E(1.0, z, z, 1.0, 1, p) == doctest::Approx(1.0));
  }

  SUBCASE("branch selection at x=y: C t^{-d/(2-xi)}") {
    Vec x(2);
    x << 1.0, 0.0;
    double got = estimate_E(2.0, x, x, 1.0, 1, p);
    CHECK(got == doctest::Approx(std::pow(2.0, -2.0)));
  }

  SUBCASE("near branch: |y| < |x|/2") {
    Vec x(2), y(2);
    x << 2.0, 0.0;
    y << 0.5, 0.0;
    double C = 1.0;
    double want = std::pow(2.0, -1.0) * std::pow(0.5, -1.0) *
                  std::exp(-std::pow(2.0, -1.0) * 1.5 * 1.5 / (C * 0.5));
    CHECK(estimate_E(0.5, x, y, C, 1, p) == doctest::Approx(want));
  }

  SUBCASE("monotone decreasing in |x-y| within each branch") {
    Vec x(2);
    x << 1.0, 0.0;
    double prev = 1e300;
    for (double s : {1.0, 1.5, 2.0, 3.0}) {
      Vec y(2);
      y << s, 0.0;  // stays in the far branch
      double v = estimate_E(1.0, x, y, 1.0, 1, p);
      CHECK(v <= prev);
      prev = v;
    }
  }

  SUBCASE("blockwise product with a Gaussian factor") {
    SymbolParams p3(3, 2, 1.0);
    Vec x(4), y(4);
    x << 1, 0, 1, 0;
    y << 1, 0, 0, 0;
    double rough = estimate_E(1.0, x.head(2), y.head(2), 1.0, 1, p3);
    double gauss = 1.0 * std::pow(1.0, -1.0) * std::exp(-1.0);
    CHECK(estimate_E(1.0, x, y, 1.0, 1, p3) ==
          doctest::Approx(rough * gauss).epsilon(1e-12));
  }

  SUBCASE("integrated envelope converges for separated points") {
    Vec x(2), y(2);
    x << 1.0, 0.0;
    y << 3.0, 0.0;
    double v = estimate_E_integrated(x, y, 1.0, 1, p);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
  }
}

TEST_CASE("fit_exponent") {
  SUBCASE("exact power law") {
    FitResult fr = fit_exponent({{1, 1, 0}, {2, 0.5, 0}, {4, 0.25, 0}, {8, 0.125, 0}});
    CHECK(fr.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fr.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fr.window_lo == 1.0);
    CHECK(fr.window_hi == 8.0);
  }

  SUBCASE("constant data has slope zero") {
    FitResult fr = fit_exponent({{1, 3, 0}, {2, 3, 0}, {4, 3, 0}, {8, 3, 0}});
    CHECK(fr.slope == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("input validation") {
    CHECK_THROWS(fit_exponent({{1, 1, 0}, {2, 2, 0}, {3, 3, 0}}));
    CHECK_THROWS(fit_exponent({{1, 1, 0}, {2, -1, 0}, {3, 3, 0}, {4, 4, 0}}));
  }
}
