#include <doctest.h>

#include "helpers.hpp"
#include "rigidity/json_io.hpp"
#include "rigidity/rng.hpp"

using namespace rigidity;

TEST_CASE("point set round trip") {
  PointSet expl = PointSet::explicit_set(2, {Vec{0.05, -0.02}, Vec{0.1, 0.1}}, "pts");
  json j = to_json(expl);
  PointSet back = point_set_from_json(j);
  CHECK_FALSE(back.is_implicit());
  CHECK(back.points().size() == 2);
  CHECK(back.points()[1][1] == 0.1);
  CHECK(back.label() == "pts");
  CHECK(to_json(back) == j);

  PointSet grid = PointSet::implicit_grid(2, 0.2, 0.01, Vec{0.005, 0.005}, Vec{-0.1, -0.1}, "g");
  json jg = to_json(grid);
  PointSet gback = point_set_from_json(jg);
  CHECK(gback.is_implicit());
  CHECK(gback.grid().h == 0.01);
  CHECK(to_json(gback) == jg);
}

TEST_CASE("line certificate round trip recomputes invariants") {
  Rng rng(2);
  LineCertificate cert = testutil::random_certificate(rng, 2, 2, 0.05, 0.004);
  cert.rule = "stride";
  json j = to_json(cert);
  LineCertificate back = line_certificate_from_json(j);
  CHECK(back.rho == doctest::Approx(cert.rho).epsilon(1e-12));
  CHECK(back.kappa == doctest::Approx(cert.kappa).epsilon(1e-12));
  CHECK(back.mu_d == doctest::Approx(cert.mu_d).epsilon(1e-12));
  CHECK(back.rule == "stride");
}

TEST_CASE("serialized doubles are loss-free") {
  json j = to_json(Vec{1.0 / 3.0, 0.1});
  Vec v = vec_from_json(j);
  CHECK(v[0] == 1.0 / 3.0);
  CHECK(v[1] == 0.1);
}
