#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/remez.hpp"
#include "rigidity/rng.hpp"

using namespace rigidity;

namespace {

PointSet triangle(double h) {
  return PointSet::explicit_set(2, {Vec{-0.5, 0.0}, Vec{0.0, h}, Vec{0.5, 0.0}}, "triangle",
                                /*raw_cube_set=*/true);
}

}  // namespace

TEST_CASE("degenerate sets have infinite Remez constant") {
  PointSet collinear = PointSet::explicit_set(
      2, {Vec{-0.2, -0.2}, Vec{0.0, 0.0}, Vec{0.2, 0.2}});
  RemezEstimate est = remez_bounds(collinear, 1, 51);
  CHECK(est.infinite);
  CHECK(std::isinf(est.upper));
  // The kernel witness is a nonzero degree-1 polynomial vanishing on Z.
  double max_on_z = 0, coeff_norm = 0;
  for (const Vec& p : collinear.points())
    max_on_z = std::max(max_on_z, std::abs(eval_polynomial(est.basis, est.witness, p)));
  for (double c : est.witness) coeff_norm = std::max(coeff_norm, std::abs(c));
  CHECK(coeff_norm > 1e-6);
  CHECK(max_on_z <= 1e-8);

  CHECK(rigidity_from_remez(est, 1).lower == 0.0);
}

TEST_CASE("triangle golden test") {
  for (double h : {0.05, 0.1, 0.125}) {
    PointSet z = triangle(h);
    RemezEstimate est = remez_bounds(z, 1, 201, RemezDomain::cube);
    CAPTURE(h);
    CHECK_FALSE(est.infinite);
    CHECK(est.lower <= est.upper);
    CHECK(est.upper <= (3 * h + 2) / h);

    RemezRigidity rg = rigidity_from_remez(est, 1);
    CHECK(rg.lower >= h / 4 * (1 - 1e-6));
    // Interval from the worked example, with the recomputed top-derivative
    // norm 8h of the witness polynomial.
    CHECK(rg.lower <= 16 * h);

    // Witness Q = y + 4h(x^2 - 1/4) vanishes on the triangle.
    for (const Vec& p : z.points()) {
      double q = p[1] + 4 * h * (p[0] * p[0] - 0.25);
      CHECK(std::abs(q) <= 1e-12);
    }
  }
}

TEST_CASE("dense grid gives a near-norming set") {
  std::vector<Vec> pts;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      Vec p{-1.0 + i * 0.1, -1.0 + j * 0.1};
      if (p.norm2() <= 1.0) pts.push_back(p);
    }
  PointSet z = PointSet::explicit_set(2, pts, "dense", /*raw_cube_set=*/true);
  RemezEstimate est = remez_bounds(z, 2, 41, RemezDomain::ball);
  CHECK_FALSE(est.infinite);
  // >= 1 because Z sits inside the ball; the excess is boundary overshoot
  // between samples at spacing 0.1.
  CHECK(est.lower >= 1.0 - 1e-9);
  CHECK(est.lower <= 1.3);
  CHECK(est.upper >= est.lower * (1 - 1e-9));
  CHECK(est.upper <= 2.0);
}

TEST_CASE("perfect norming set maps to (d+1)!/2") {
  RemezEstimate est;
  est.d = 2;
  est.lower = est.upper = 1.0;
  CHECK(rigidity_from_remez(est, 2).lower == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("subset monotonicity of the bounds") {
  Rng rng(43);
  std::vector<Vec> pts;
  for (int i = 0; i < 14; ++i) pts.push_back(testutil::random_ball_point(rng, 2, 0.9));
  PointSet full = PointSet::explicit_set(2, pts, "", true);
  std::vector<Vec> fewer(pts.begin(), pts.begin() + 8);
  PointSet subset = PointSet::explicit_set(2, fewer, "", true);
  RemezEstimate a = remez_bounds(full, 2, 61);
  RemezEstimate b = remez_bounds(subset, 2, 61);
  if (!a.infinite && !b.infinite) {
    CHECK(b.lower >= a.lower * (1 - 1e-9));
    CHECK(b.upper >= a.upper * (1 - 1e-9));
  } else {
    CHECK(b.infinite);  // dropping points can only lose norming power
  }
}

TEST_CASE("density-based rigidity bound") {
  // Cardinality gate.
  Rng rng(3);
  std::vector<Vec> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(testutil::random_ball_point(rng, 2, 1.0 / 3));
  CHECK_THROWS_WITH_AS(density_remez_bound(PointSet::explicit_set(2, pts), 1, 0.01),
                       "below density threshold", std::runtime_error);

  // A dense grid passes the gate and gives a positive bound.
  PointSet grid = PointSet::implicit_grid(2, 0.2, 0.002, Vec{0.001, 0.001}, Vec{-0.1, -0.1});
  double rho = 0.002;
  double bound = density_remez_bound(grid, 1, rho);
  double card = grid.count();
  double expected = 1.0 * std::pow((card * rho * rho - 16 * rho) / 8.0, 1.0);
  CHECK(bound == doctest::Approx(expected).epsilon(1e-12));
  CHECK(bound > 0);
}

TEST_CASE("h-dense specialized bound") {
  // n=2, d=1, s=0.2: (d+1)!/2 * (s/(12 n))^(n d) = (0.2/24)^2.
  CHECK(h_dense_density_bound(2, 1, 0.2) ==
        doctest::Approx(std::pow(0.2 / 24.0, 2.0)).epsilon(1e-12));
  CHECK(h_dense_density_bound(2, 1, 0.2) == doctest::Approx(6.9e-5).epsilon(0.01));
}
