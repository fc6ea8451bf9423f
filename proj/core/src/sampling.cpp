#include "standardness/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace standardness {

namespace {

constexpr double kPi = std::numbers::pi;

// cumulative fan-triangle areas, apex at the centroid
struct PolygonFan {
  Vec2 apex;
  std::vector<double> cum_area;  // strictly increasing, last == polygon area
};

PolygonFan make_fan(const ConvexPolygon& p) {
  PolygonFan fan;
  fan.apex = polygon_centroid(p);
  const auto& v = p.vertices;
  double acc = 0.0;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    acc += 0.5 * ((a.x - fan.apex.x) * (b.y - fan.apex.y) -
                  (a.y - fan.apex.y) * (b.x - fan.apex.x));
    fan.cum_area.push_back(acc);
  }
  return fan;
}

void sample_polygon(const ConvexPolygon& p, std::int64_t n, Stream& stream,
                    std::vector<double>& out) {
  const PolygonFan fan = make_fan(p);
  const auto& v = p.vertices;
  const double total = fan.cum_area.back();
  for (std::int64_t i = 0; i < n; ++i) {
    const double pick = stream.next_double() * total;
    const size_t k = std::lower_bound(fan.cum_area.begin(), fan.cum_area.end(), pick) -
                     fan.cum_area.begin();
    const size_t kk = std::min(k, v.size() - 1);
    const Vec2 a = fan.apex, b = v[kk], c = v[(kk + 1) % v.size()];
    // square-root map: (s, t) = (1 - sqrt(u), sqrt(u) * w) is uniform on the
    // unit triangle; push through the affine frame (a; b - a, c - a)
    const double u = stream.next_double();
    const double w = stream.next_double();
    const double su = std::sqrt(u);
    const double s = 1.0 - su;
    const double t = su * w;
    out.push_back(a.x + s * (b.x - a.x) + t * (c.x - a.x));
    out.push_back(a.y + s * (b.y - a.y) + t * (c.y - a.y));
  }
}

void sample_ball(const Ball& b, std::int64_t n, Stream& stream, std::vector<double>& out) {
  std::vector<double> g(b.dim);
  for (std::int64_t i = 0; i < n; ++i) {
    double norm2;
    do {
      norm2 = 0.0;
      for (int k = 0; k < b.dim; ++k) {
        g[k] = stream.next_gaussian();
        norm2 += g[k] * g[k];
      }
    } while (norm2 < 1e-280);
    const double u = stream.next_double();
    const double scale =
        b.radius * std::pow(u, 1.0 / b.dim) / std::sqrt(norm2);
    for (int k = 0; k < b.dim; ++k) out.push_back(b.center[k] + scale * g[k]);
  }
}

void sample_radial(std::int64_t n, Stream& stream, std::vector<double>& out) {
  for (std::int64_t i = 0; i < n; ++i) {
    const double pick = stream.next_double();
    const double theta = 2.0 * kPi * stream.next_double();
    const double u = stream.next_double();
    const double rad = pick < 0.25 ? std::sqrt(u) : std::pow(u, 0.25);
    out.push_back(rad * std::cos(theta));
    out.push_back(rad * std::sin(theta));
  }
}

}  // namespace

Shape support(const Distribution& dist) {
  if (const auto* u = std::get_if<UniformOnShape>(&dist)) return u->shape;
  return Shape{Ball{2, {0.0, 0.0}, 1.0}};
}

SampleCloud sample(const Distribution& dist, std::int64_t n, Stream& stream) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  std::vector<double> out;
  const int d = shape_dim(support(dist));
  out.reserve(static_cast<size_t>(n) * d);
  if (const auto* u = std::get_if<UniformOnShape>(&dist)) {
    if (const auto* p = std::get_if<ConvexPolygon>(&u->shape))
      sample_polygon(*p, n, stream, out);
    else
      sample_ball(std::get<Ball>(u->shape), n, stream, out);
  } else {
    sample_radial(n, stream, out);
  }
  return SampleCloud{std::move(out), n, d};
}

NuBallResult nu_ball(const Distribution& dist, std::span<const double> x, double r,
                     std::int64_t mc_budget) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("nu_ball: radius must be positive");
  if (const auto* u = std::get_if<UniformOnShape>(&dist)) {
    const double mass = ball_shape_intersection(u->shape, x, r) / area(u->shape);
    return NuBallResult{std::min(mass, 1.0), 0.0, true};
  }
  if (mc_budget < 10'000)
    throw std::invalid_argument("nu_ball: Monte Carlo budget must be >= 10000");
  if (x.size() != 2) throw std::invalid_argument("point dimension mismatch");
  Stream stream = SeedSpec{kGolden}.stream(0, 0);
  const double r2 = r * r;
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < mc_budget; ++i) {
    const double pick = stream.next_double();
    const double theta = 2.0 * kPi * stream.next_double();
    const double u = stream.next_double();
    const double rad = pick < 0.25 ? std::sqrt(u) : std::pow(u, 0.25);
    const double dx = rad * std::cos(theta) - x[0];
    const double dy = rad * std::sin(theta) - x[1];
    if (dx * dx + dy * dy <= r2) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(mc_budget);
  const double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(mc_budget)));
  return NuBallResult{p, se, false};
}

std::optional<double> analytic_upsilon(const Distribution& dist) {
  if (const auto* u = std::get_if<UniformOnShape>(&dist)) return uniform_upsilon(u->shape);
  if (std::holds_alternative<RadialCombination>(dist)) return 1.0 / (4.0 * kPi);
  return std::nullopt;
}

}  // namespace standardness
