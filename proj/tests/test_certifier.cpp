#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "rigidity/bump.hpp"
#include "rigidity/certifier.hpp"
#include "rigidity/chain_rule.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/rng.hpp"

using namespace rigidity;

namespace {

PointSet huge_grid(int n, double s, double h) {
  Vec offset(n), corner(n);
  for (int i = 0; i < n; ++i) {
    offset[i] = h / 2;
    corner[i] = -s / 2;
  }
  return PointSet::implicit_grid(n, s, h, offset, corner);
}

}  // namespace

TEST_CASE("one-dimensional divided-difference bound") {
  CHECK(one_d_lower_bound(1.0, {-1.0 / 3, 1.0 / 3}, 1.0) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(one_d_lower_bound(1.0, {-1.0 / 3, 0.0, 1.0 / 3}, 1.0) ==
        doctest::Approx(6.75).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(one_d_lower_bound(1.0, {0.1, 0.1}, 1.0), "coincident zeros",
                       std::invalid_argument);
  CHECK_THROWS(one_d_lower_bound(1.0, {0.5}, 1.0));   // zero outside [-1/3, 1/3]
  CHECK_THROWS(one_d_lower_bound(2.0, {0.1}, 1.0));   // t0 outside [-1, 1]
  CHECK_THROWS(one_d_lower_bound(1.0, {0.1}, 0.5));   // |value| != 1

  Rng rng(19);
  for (int trial = 0; trial < 10000; ++trial) {
    int d = 1 + static_cast<int>(rng.uniform_int(0, 3));
    std::vector<double> zeros;
    bool ok = true;
    for (int j = 0; j <= d; ++j) {
      double z = rng.uniform(-1.0 / 3, 1.0 / 3);
      for (double w : zeros) ok = ok && std::abs(z - w) > 1e-9;
      zeros.push_back(z);
    }
    if (!ok) continue;
    double t0 = rng.uniform(-1.0, 1.0);
    for (double w : zeros) ok = ok && std::abs(t0 - w) > 1e-9;
    if (!ok) continue;
    double fact = std::tgamma(d + 2.0);
    double bound = one_d_lower_bound(t0, zeros, 1.0);
    CHECK(bound >= fact / std::pow(2.0, d + 1) * (1 - 1e-12));
  }
}

TEST_CASE("h_dense_check gate arithmetic") {
  BumpFunction bump = build_bump(0.9, 4);
  ChainRuleConstants c = compute_constants(2, 1, bump);
  double s = 0.2;
  double hstar = c.xi * std::pow(s, 4);
  HDenseCheck exact = h_dense_check(2, 1, s, hstar, c);
  CHECK(exact.ok);
  CHECK(exact.margin == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact.threshold == doctest::Approx(hstar).epsilon(1e-12));
  CHECK_FALSE(h_dense_check(2, 1, s, 2 * hstar, c).ok);
  // Recompute the threshold from the constant identities.
  double xi = c.C3 / (2 * std::pow(c.xi3, 2.0));
  CHECK(exact.threshold == doctest::Approx(xi * std::pow(s, 4)).epsilon(1e-12));
}

TEST_CASE("thickness route: sparse sets are gated") {
  Rng rng(3);
  std::vector<Vec> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(testutil::random_ball_point(rng, 2, 1.0 / 3));
  PointSet z = PointSet::explicit_set(2, pts);
  BumpFunction bump = build_bump(0.9, 4);
  ChainRuleConstants c = compute_constants(2, 1, bump);
  CHECK_THROWS_WITH_AS(
      thickness_upper_bound(z, Vec{1.0, 0.0}, 1, 1e-4, 0.05, c, bump, SearchBudget{}, 1),
      "density insufficient", std::runtime_error);
}

TEST_CASE("thickness route: dense implicit grid realizes the bound") {
  BumpFunction bump = build_bump(0.9, 4);
  ChainRuleConstants c = compute_constants(2, 1, bump);
  // Pick (eps, kappa) inside the guaranteed regime for a dense grid.
  double s = 0.2, h = 1e-7;
  PointSet z = huge_grid(2, s, h);
  double eps = 1e-5;
  double m = covering_count(z, eps);
  double kappa = m * eps * eps / c.xi1;  // kappa(eps) of the profile
  REQUIRE(eps < kappa / (10 * std::sqrt(2.0)));
  ThicknessWitness w =
      thickness_upper_bound(z, Vec{0.0, 1.0}, 1, eps, kappa, c, bump, SearchBudget{}, 5);
  CHECK(w.nu_d <= c.xi2 * eps / std::pow(kappa, 2.0));
  CHECK(w.cert.kappa >= kappa);
  CHECK(w.cert.rho <= std::sqrt(2.0) * eps * (1 + 1e-9));
}

TEST_CASE("certify: h-dense regime issues the C4 bound") {
  BumpFunction bump = build_bump(0.9, 4);
  ChainRuleConstants c = compute_constants(2, 1, bump);
  double s = 0.2;
  double h = c.xi * std::pow(s, 4) / 4;
  PointSet z = huge_grid(2, s, h);
  CertifyResult res = certify(z, 1);
  REQUIRE(res.certified);
  CHECK(res.cert.bound == doctest::Approx(c.C4).epsilon(1e-12));
  CHECK(res.cert.bound == doctest::Approx(0.2 * c.C1).epsilon(1e-12));
  CHECK((res.cert.route == "HDense" || res.cert.route == "EntropyZeta"));
  CHECK(res.cert.sampling == "uniform");
  REQUIRE_FALSE(res.cert.witnesses.empty());
  CHECK(res.cert.witnesses[0].nu_d <= c.C3);

  SUBCASE("replay reproduces the bound bit-for-bit") {
    CHECK(replay_bound(res.cert) == res.cert.bound);
  }
  SUBCASE("soundness sampler finds no counterexample") {
    SoundnessReport rep = soundness_check(z, res.cert, 20, 7);
    CHECK_FALSE(rep.counterexample);
    CHECK(rep.fields_checked == 20);
    CHECK(rep.min_ratio >= 1.0);
  }
  SUBCASE("route consistency: a probed boundary point carries a witness") {
    const ThicknessWitness& w = res.cert.witnesses[0];
    CHECK(std::abs(w.z0.norm2() - 1.0) <= 1e-12);
    CHECK(w.curve.norm_bound[1] < 1.0);
  }
}

TEST_CASE("certify: too few points can never be certified") {
  PointSet z = PointSet::explicit_set(1, {Vec{0.05}});
  CertifyResult res = certify(z, 1);
  CHECK_FALSE(res.certified);
}

TEST_CASE("certify: sparse random points report the zeta bottleneck") {
  Rng rng(29);
  std::vector<Vec> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(testutil::random_ball_point(rng, 2, 1.0 / 3));
  CertifyResult res = certify(PointSet::explicit_set(2, pts), 1);
  CHECK_FALSE(res.certified);
  CHECK(res.bottleneck == "zeta_d = 0");
}

TEST_CASE("soundness: explicit vanishing fields exceed a remez-scale bound") {
  // Small synthetic certificate payload against an explicit set.
  PointSet z = PointSet::explicit_set(2, {Vec{-0.2, 0.0}, Vec{0.0, 0.1}, Vec{0.2, 0.0}});
  RigidityCertificate cert;
  cert.d = 1;
  cert.bound = 1e-3;
  SoundnessReport rep = soundness_check(z, cert, 10, 11);
  CHECK(rep.fields_checked == 10);
  CHECK_FALSE(rep.counterexample);
}
