#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "standardness/oracle.hpp"

using namespace standardness;

namespace {

const double kPi = std::acos(-1.0);

Distribution unit_square() {
  return UniformOnShape{ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})};
}

Distribution area_one_disk() {
  return UniformOnShape{Ball(2, {0, 0}, 1.0 / std::sqrt(kPi))};
}

double dist_to(const std::vector<double>& x, double px, double py) {
  return std::hypot(x[0] - px, x[1] - py);
}

}  // namespace

TEST_CASE("square minimum sits at a corner") {
  const MinBallResult m = min_ball_fraction(unit_square(), 0.02);
  CHECK(std::abs(m.value - 0.25) <= 5e-3);
  CHECK(m.std_error == 0.0);
  // the four corners are tied; ties resolve to the smallest probe
  const double corner = std::min({dist_to(m.argmin, 0, 0), dist_to(m.argmin, 1, 0),
                                  dist_to(m.argmin, 0, 1), dist_to(m.argmin, 1, 1)});
  CHECK(corner <= 0.04);
}

TEST_CASE("disk minimum sits on the rim") {
  const MinBallResult m = min_ball_fraction(area_one_disk(), 0.01);
  CHECK(std::abs(m.value - 0.5) <= 5e-3);
  CHECK(std::abs(std::hypot(m.argmin[0], m.argmin[1]) - 1.0 / std::sqrt(kPi)) <=
        0.02);
}

TEST_CASE("triangle minimum matches the smallest vertex angle") {
  const MinBallResult m =
      min_ball_fraction(UniformOnShape{make_regular_polygon(3, 1.0)}, 0.02);
  CHECK(std::abs(m.value - 1.0 / 6.0) <= 5e-3);
}

TEST_CASE("right triangle argmin lands on a forty-five degree vertex") {
  // vertices (0,0), (1,0), (0,1); the pi/4 corners are (1,0) and (0,1)
  const Distribution tri = UniformOnShape{ConvexPolygon({{0, 0}, {1, 0}, {0, 1}})};
  const double r = 0.02;
  const MinBallResult m = min_ball_fraction(tri, r);
  // angle pi/4, area 1/2: fraction (pi/4)/(2 pi) / (1/2) -> value 1/4
  CHECK(std::abs(m.value - 0.25) <= 5e-3);
  const double to_sharp =
      std::min(dist_to(m.argmin, 1, 0), dist_to(m.argmin, 0, 1));
  CHECK(to_sharp <= 2 * r);
}

TEST_CASE("numeric minima track the closed forms at a small radius") {
  const Distribution laws[] = {
      UniformOnShape{make_regular_polygon(3, 1.0)},
      UniformOnShape{make_regular_polygon(4, 1.0)},
      UniformOnShape{make_regular_polygon(6, 1.0)},
      area_one_disk(),
      UniformOnShape{Ball(3, {0, 0, 0}, std::cbrt(3.0 / (4.0 * kPi)))},
      UniformOnShape{Ball(4, {0, 0, 0, 0}, std::pow(2.0 / (kPi * kPi), 0.25))},
  };
  for (const Distribution& dist : laws) {
    const double truth = analytic_upsilon(dist).value();
    const MinBallResult m = min_ball_fraction(dist, 1e-3);
    CHECK(std::abs(m.value - truth) <= 1e-2);
  }
}

TEST_CASE("oracle reruns are bitwise identical") {
  for (const Distribution& dist : {unit_square(), area_one_disk()}) {
    const MinBallResult a = min_ball_fraction(dist, 0.05);
    const MinBallResult b = min_ball_fraction(dist, 0.05);
    CHECK(a.value == b.value);
    CHECK(a.argmin == b.argmin);
  }
}

TEST_CASE("minimum lower-bounds interior probes") {
  const Distribution sq = unit_square();
  const double r = 0.1;
  const MinBallResult m = min_ball_fraction(sq, r);
  const double norm = kPi * r * r;
  for (const double x : {0.2, 0.5, 0.9})
    for (const double y : {0.1, 0.55, 0.98}) {
      const std::vector<double> p{x, y};
      CHECK(m.value <= nu_ball(sq, p, r).value / norm + 1e-12);
    }
}

TEST_CASE("gap curves") {
  const std::vector<double> radii{0.1, 0.05, 0.025, 0.0125};

  SUBCASE("disk gap shrinks like a power of the radius") {
    const OmegaCurveResult res = omega_curve(area_one_disk(), radii, 0.5);
    REQUIRE(res.curve.omega_values.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(res.curve.omega_values[i] < res.curve.omega_values[i - 1]);
      CHECK(res.curve.omega_values[i] > 0.0);
    }
    REQUIRE(res.slope.has_value());
    CHECK(*res.slope >= 0.7);
    CHECK(*res.slope <= 1.3);
  }

  SUBCASE("polygon gap is identically zero, so no slope") {
    const OmegaCurveResult res = omega_curve(unit_square(), radii, 0.25);
    for (const double w : res.curve.omega_values) CHECK(w <= 5e-3);
    CHECK(!res.slope.has_value());
  }

  SUBCASE("single radius cannot fit a slope") {
    const OmegaCurveResult res = omega_curve(area_one_disk(), {0.1}, 0.5);
    CHECK(!res.slope.has_value());
    CHECK(res.curve.values.size() == 1);
  }

  SUBCASE("radii must strictly decrease") {
    CHECK_THROWS_AS(omega_curve(area_one_disk(), {0.1, 0.1}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(omega_curve(area_one_disk(), {0.05, 0.1}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(omega_curve(area_one_disk(), {}, 0.5), std::invalid_argument);
  }
}

TEST_CASE("omega is the absolute gap") {
  const double w = omega(unit_square(), 0.02, 0.25);
  CHECK(w >= 0.0);
  CHECK(w <= 5e-3);
}

TEST_CASE("radius must stay below the support diameter") {
  CHECK_THROWS_AS(min_ball_fraction(unit_square(), 1.5), std::out_of_range);
  CHECK_NOTHROW(min_ball_fraction(unit_square(), 1.41));
  CHECK_THROWS_AS(min_ball_fraction(unit_square(), 0.0), std::invalid_argument);
}

TEST_CASE("configuration bounds are enforced") {
  OracleConfig cfg;
  cfg.boundary_grid = 99;
  CHECK_THROWS_AS(min_ball_fraction(unit_square(), 0.1, cfg), std::invalid_argument);
  cfg = {};
  cfg.interior_grid = 19;
  CHECK_THROWS_AS(min_ball_fraction(unit_square(), 0.1, cfg), std::invalid_argument);
  cfg = {};
  cfg.refine_iters = -1;
  CHECK_THROWS_AS(min_ball_fraction(unit_square(), 0.1, cfg), std::invalid_argument);
  cfg = {};
  cfg.mc_budget = 9999;
  CHECK_THROWS_AS(min_ball_fraction(RadialCombination{}, 0.1, cfg),
                  std::invalid_argument);
}

TEST_CASE("radial law minimum is at the origin") {
  OracleConfig cfg;
  cfg.mc_budget = 200000;
  const double r = 0.3;
  const MinBallResult m = min_ball_fraction(RadialCombination{}, r, cfg);
  CHECK(!m.argmin.empty());
  CHECK(m.std_error > 0.0);
  // density 1/(4 pi) + 3/(2 pi) ||y||^2: mass fraction of B(0, r) is
  // (1 + 3 r^2) / (4 pi) of the uniform normalization
  const double exact = (1.0 + 3.0 * r * r) / (4.0 * kPi);
  CHECK(std::abs(m.value - exact) <= 3.0 * m.std_error + 1e-3);
  CHECK(std::hypot(m.argmin[0], m.argmin[1]) <= 0.25);
}
