#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "standardness/sampling.hpp"

using namespace standardness;

namespace {

const double kPi = std::acos(-1.0);

Distribution uniform_unit_square() {
  return UniformOnShape{ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})};
}

SampleCloud draw(const Distribution& dist, std::int64_t n, std::uint64_t seed = 42) {
  Stream s = SeedSpec{seed}.stream(0, 0);
  return sample(dist, n, s);
}

double nu_at(const Distribution& dist, std::initializer_list<double> x, double r,
             std::int64_t budget = 1'000'000) {
  const std::vector<double> v(x);
  return nu_ball(dist, v, r, budget).value;
}

}  // namespace

TEST_CASE("sampling is deterministic given a seed") {
  const Distribution dists[] = {uniform_unit_square(),
                                UniformOnShape{Ball(3, {0, 0, 0}, 1.0)},
                                RadialCombination{}};
  for (const Distribution& dist : dists) {
    const SampleCloud a = draw(dist, 500);
    const SampleCloud b = draw(dist, 500);
    CHECK(a.data == b.data);  // bitwise
    CHECK(draw(dist, 500, 43).data != a.data);
  }
}

TEST_CASE("samples stay inside the support") {
  const Distribution dists[] = {
      UniformOnShape{make_regular_polygon(3, 1.0)},
      UniformOnShape{make_regular_polygon(4, 1.0)},
      UniformOnShape{make_regular_polygon(6, 1.0)},
      UniformOnShape{Ball(2, {0, 0}, 1.0 / std::sqrt(kPi))},
      UniformOnShape{Ball(3, {0.5, -1, 2}, 0.7)},
      UniformOnShape{Ball(4, {0, 0, 0, 0}, 0.75)},
      RadialCombination{},
  };
  for (const Distribution& dist : dists) {
    const Shape sup = support(dist);
    const SampleCloud cloud = draw(dist, 20000);
    CHECK(cloud.d == shape_dim(sup));
    std::int64_t bad = 0;
    for (std::int64_t i = 0; i < cloud.n; ++i)
      if (!contains(sup, cloud.point(i))) ++bad;
    CHECK(bad == 0);
  }
}

TEST_CASE("support reports the generating shape") {
  const Shape sq = make_regular_polygon(4, 1.0);
  const Shape got = support(UniformOnShape{sq});
  CHECK(std::get<ConvexPolygon>(got).vertices.size() == 4);

  const Shape rad = support(RadialCombination{});
  const Ball& b = std::get<Ball>(rad);
  CHECK(b.dim == 2);
  CHECK(b.radius == 1.0);
  CHECK(b.center[0] == 0.0);
  CHECK(b.center[1] == 0.0);

  const Ball direct(2, {0, 0}, 1.0 / std::sqrt(kPi));
  CHECK(std::get<Ball>(support(UniformOnShape{direct})).radius ==
        direct.radius);
}

TEST_CASE("square sample mean matches the center") {
  const SampleCloud cloud = draw(uniform_unit_square(), 100000);
  double mx = 0.0, my = 0.0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    mx += cloud.point(i)[0];
    my += cloud.point(i)[1];
  }
  mx /= static_cast<double>(cloud.n);
  my /= static_cast<double>(cloud.n);
  CHECK(std::abs(mx - 0.5) < 0.005);
  CHECK(std::abs(my - 0.5) < 0.005);
}

TEST_CASE("ball radial law has the right half-radius mass") {
  const double R = std::cbrt(3.0 / (4.0 * kPi));  // volume 1
  const SampleCloud cloud =
      draw(UniformOnShape{Ball(3, {0, 0, 0}, R)}, 100000);
  std::int64_t inside = 0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto p = cloud.point(i);
    if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= (R / 2) * (R / 2)) ++inside;
  }
  const double frac = static_cast<double>(inside) / static_cast<double>(cloud.n);
  CHECK(std::abs(frac - 0.125) < 0.005);
}

TEST_CASE("radial combination stays in the unit disk") {
  const SampleCloud cloud = draw(RadialCombination{}, 100000);
  double max_norm = 0.0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto p = cloud.point(i);
    max_norm = std::max(max_norm, std::hypot(p[0], p[1]));
  }
  CHECK(max_norm <= 1.0);
  // the law is not uniform: mass concentrates away from the origin
  std::int64_t half = 0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto p = cloud.point(i);
    if (std::hypot(p[0], p[1]) <= 0.5) ++half;
  }
  // nu(B(0,1/2)) = (1/4)(1/4) + (3/4)(1/16) = 0.109375
  CHECK(std::abs(static_cast<double>(half) / 1e5 - 0.109375) < 0.005);
}

TEST_CASE("uniform laws pass equal-area chi-square partitions") {
  const std::int64_t n = 100000;

  SUBCASE("axis-aligned square, 4x4 grid") {
    const SampleCloud cloud = draw(uniform_unit_square(), n);
    std::vector<std::int64_t> bins(16, 0);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const auto p = cloud.point(i);
      const int cx = std::min(3, static_cast<int>(p[0] * 4));
      const int cy = std::min(3, static_cast<int>(p[1] * 4));
      ++bins[static_cast<std::size_t>(cy * 4 + cx)];
    }
    CHECK(testhelpers::chi_square_equal(bins, n) < testhelpers::kChiSqCrit15);
  }

  SUBCASE("disk, 4 equal-area shells x 4 sectors") {
    const double R = 1.0 / std::sqrt(kPi);
    const SampleCloud cloud = draw(UniformOnShape{Ball(2, {0, 0}, R)}, n);
    std::vector<std::int64_t> bins(16, 0);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const auto p = cloud.point(i);
      const double rho = std::hypot(p[0], p[1]) / R;
      int shell = std::min(3, static_cast<int>(rho * rho * 4));  // area-equal
      double ang = std::atan2(p[1], p[0]);
      if (ang < 0) ang += 2 * kPi;
      const int sector = std::min(3, static_cast<int>(ang / (2 * kPi) * 4));
      ++bins[static_cast<std::size_t>(shell * 4 + sector)];
    }
    CHECK(testhelpers::chi_square_equal(bins, n) < testhelpers::kChiSqCrit15);
  }

  SUBCASE("triangle, midpoint subdivision") {
    const Shape shape = make_regular_polygon(3, 1.0);
    const auto& tri = std::get<ConvexPolygon>(shape);
    const Vec2 a = tri.vertices[0], b = tri.vertices[1], c = tri.vertices[2];
    const Vec2 ab{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const Vec2 bc{(b.x + c.x) / 2, (b.y + c.y) / 2};
    const Vec2 ca{(c.x + a.x) / 2, (c.y + a.y) / 2};
    const SampleCloud cloud = draw(UniformOnShape{shape}, n);
    std::vector<std::int64_t> bins(4, 0);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const auto p = cloud.point(i);
      if (testhelpers::point_in_triangle(p[0], p[1], a, ab, ca))
        ++bins[0];
      else if (testhelpers::point_in_triangle(p[0], p[1], ab, b, bc))
        ++bins[1];
      else if (testhelpers::point_in_triangle(p[0], p[1], ca, bc, c))
        ++bins[2];
      else
        ++bins[3];  // central inverted triangle
    }
    CHECK(testhelpers::chi_square_equal(bins, n) < testhelpers::kChiSqCrit3);
  }

  SUBCASE("hexagon, centroid fan") {
    const Shape shape = make_regular_polygon(6, 1.0);
    const auto& hex = std::get<ConvexPolygon>(shape);
    const SampleCloud cloud = draw(UniformOnShape{shape}, n);
    std::vector<std::int64_t> bins(6, 0);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const auto p = cloud.point(i);
      double ang = std::atan2(p[1], p[0]);
      if (ang < 0) ang += 2 * kPi;
      // fan triangle k spans vertex angles [k, k+1) * pi/3
      int k = std::min(5, static_cast<int>(ang / (2 * kPi) * 6));
      // guard against boundary rounding by testing the actual triangle
      for (int tryk = 0; tryk < 6; ++tryk) {
        const int cand = (k + tryk) % 6;
        const Vec2 v0 = hex.vertices[static_cast<std::size_t>(cand)];
        const Vec2 v1 = hex.vertices[static_cast<std::size_t>((cand + 1) % 6)];
        if (testhelpers::point_in_triangle(p[0], p[1], {0, 0}, v0, v1)) {
          k = cand;
          break;
        }
      }
      ++bins[static_cast<std::size_t>(k)];
    }
    CHECK(testhelpers::chi_square_equal(bins, n) < testhelpers::kChiSqCrit5);
  }
}

TEST_CASE("sampling rejects empty draws") {
  Stream s = SeedSpec{1}.stream(0, 0);
  CHECK_THROWS_AS(sample(uniform_unit_square(), 0, s), std::invalid_argument);
  CHECK_THROWS_AS(sample(RadialCombination{}, -5, s), std::invalid_argument);
}

TEST_CASE("ball mass queries") {
  const Distribution sq = uniform_unit_square();
  CHECK(nu_at(sq, {0.0, 0.0}, 0.1) ==
        doctest::Approx(kPi * 0.01 / 4.0).epsilon(1e-12));

  const double R = 1.0 / std::sqrt(kPi);
  const Distribution disk = UniformOnShape{Ball(2, {0, 0}, R)};
  CHECK(nu_at(disk, {0.0, 0.0}, 0.1) ==
        doctest::Approx(kPi * 0.01).epsilon(1e-12));

  // monotone in r, saturates at 1 past the diameter
  double prev = 0.0;
  for (double r = 0.05; r < 3.0; r *= 1.7) {
    const double v = nu_at(sq, {0.2, 0.2}, r);
    CHECK(v >= prev);
    CHECK(v <= 1.0 + 1e-12);
    prev = v;
  }
  CHECK(nu_at(sq, {0.5, 0.5}, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nu_at(disk, {0.0, 0.0}, 2.1 * R) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vertex mass fraction equals the angle fraction") {
  for (int k : {3, 4, 6}) {
    const Shape shape = make_regular_polygon(k, 1.0);
    const auto& poly = std::get<ConvexPolygon>(shape);
    const Vec2 v = poly.vertices[0];
    const double r = 1e-3;
    const double frac =
        nu_at(UniformOnShape{shape}, {v.x, v.y}, r) / (kPi * r * r);
    const double theta = kPi * (1.0 - 2.0 / k);  // interior angle
    CHECK(std::abs(frac - theta / (2.0 * kPi)) <= 1e-6);
  }
}

TEST_CASE("radial ball mass is Monte Carlo with reported error") {
  const Distribution rad = RadialCombination{};
  const std::vector<double> origin{0.0, 0.0};

  const NuBallResult lo = nu_ball(rad, origin, 0.3, 1'000'000);
  CHECK(!lo.exact);
  CHECK(lo.std_error > 0.0);

  // exact mass of a centered ball: nu(B(0,s)) = s^2/4 + 3 s^4/4
  const double exact = 0.09 / 4.0 + 0.75 * std::pow(0.3, 4);
  CHECK(std::abs(lo.value - exact) <= 3.0 * lo.std_error);

  // self-consistency against a 10x budget
  const NuBallResult hi = nu_ball(rad, origin, 0.3, 10'000'000);
  const double se = std::hypot(lo.std_error, hi.std_error);
  CHECK(std::abs(lo.value - hi.value) <= 3.0 * se);

  // off-center mass also matches the density integral bounds
  const std::vector<double> off_center{0.5, 0.0};
  const NuBallResult off = nu_ball(rad, off_center, 0.2, 1'000'000);
  CHECK(off.value > 0.0);
  CHECK(off.value < 1.0);

  CHECK_THROWS_AS(nu_ball(rad, origin, 0.3, 9'999), std::invalid_argument);
  // uniform laws ignore the budget and stay exact
  CHECK(nu_ball(uniform_unit_square(), origin, 0.1, 10).exact);
}
