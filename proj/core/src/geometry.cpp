#include "standardness/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace standardness {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm2(Vec2 a) { return dot(a, a); }

double shoelace_area(const std::vector<Vec2>& v) {
  double acc = 0.0;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> v) : vertices(std::move(v)) {
  const size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const Vec2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("polygon vertex is not finite");
  }
  double turning = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    const Vec2 c = vertices[(i + 2) % n];
    const Vec2 e1{b.x - a.x, b.y - a.y};
    const Vec2 e2{c.x - b.x, c.y - b.y};
    if (cross(e1, e2) <= 0.0)
      throw std::invalid_argument("polygon is not strictly convex counter-clockwise");
    turning += std::atan2(cross(e1, e2), dot(e1, e2));
  }
  // total turning 2*pi rules out multiply-wound vertex chains that pass the
  // local convexity test
  if (std::abs(turning - 2.0 * kPi) > 1e-9)
    throw std::invalid_argument("polygon winds more than once");
}

Ball::Ball(int dim_, std::vector<double> center_, double radius_)
    : dim(dim_), center(std::move(center_)), radius(radius_) {
  if (dim < 1) throw std::invalid_argument("ball dimension must be >= 1");
  if (center.size() != static_cast<size_t>(dim))
    throw std::invalid_argument("ball center size does not match dimension");
  for (double c : center)
    if (!std::isfinite(c)) throw std::invalid_argument("ball center is not finite");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball radius must be positive and finite");
}

double pow_int(double x, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: dimension must be >= 1");
  double odd = 2.0;   // w_1
  double even = kPi;  // w_2
  for (int k = 3; k <= d; ++k) {
    double& w = (k & 1) ? odd : even;
    w = w * (2.0 * kPi) / k;
  }
  if (d == 1) return 2.0;
  return (d & 1) ? odd : even;
}

int shape_dim(const Shape& s) {
  if (std::holds_alternative<ConvexPolygon>(s)) return 2;
  return std::get<Ball>(s).dim;
}

double area(const Shape& s) {
  if (const auto* p = std::get_if<ConvexPolygon>(&s)) return shoelace_area(p->vertices);
  const Ball& b = std::get<Ball>(s);
  return unit_ball_volume(b.dim) * pow_int(b.radius, b.dim);
}

double diameter(const Shape& s) {
  if (const auto* p = std::get_if<ConvexPolygon>(&s)) {
    double best = 0.0;
    const auto& v = p->vertices;
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        best = std::max(best, norm2(Vec2{v[j].x - v[i].x, v[j].y - v[i].y}));
    return std::sqrt(best);
  }
  return 2.0 * std::get<Ball>(s).radius;
}

bool contains(const Shape& s, std::span<const double> x) {
  const double slack = 1e-12 * diameter(s);
  if (const auto* p = std::get_if<ConvexPolygon>(&s)) {
    if (x.size() != 2) throw std::invalid_argument("point dimension mismatch");
    const auto& v = p->vertices;
    for (size_t i = 0, n = v.size(); i < n; ++i) {
      const Vec2 a = v[i], b = v[(i + 1) % n];
      const Vec2 e{b.x - a.x, b.y - a.y};
      const Vec2 w{x[0] - a.x, x[1] - a.y};
      // signed distance to the edge line; inside is nonnegative for CCW order
      if (cross(e, w) < -slack * std::sqrt(norm2(e))) return false;
    }
    return true;
  }
  const Ball& b = std::get<Ball>(s);
  if (x.size() != static_cast<size_t>(b.dim))
    throw std::invalid_argument("point dimension mismatch");
  double d2 = 0.0;
  for (int k = 0; k < b.dim; ++k) {
    const double t = x[k] - b.center[k];
    d2 += t * t;
  }
  const double rr = b.radius + slack;
  return d2 <= rr * rr;
}

void bounding_box(const Shape& s, std::span<double> lo, std::span<double> hi) {
  const int d = shape_dim(s);
  if (lo.size() != static_cast<size_t>(d) || hi.size() != static_cast<size_t>(d))
    throw std::invalid_argument("bounding_box: output span size mismatch");
  if (const auto* p = std::get_if<ConvexPolygon>(&s)) {
    lo[0] = lo[1] = std::numeric_limits<double>::infinity();
    hi[0] = hi[1] = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : p->vertices) {
      lo[0] = std::min(lo[0], v.x);
      lo[1] = std::min(lo[1], v.y);
      hi[0] = std::max(hi[0], v.x);
      hi[1] = std::max(hi[1], v.y);
    }
    return;
  }
  const Ball& b = std::get<Ball>(s);
  for (int k = 0; k < d; ++k) {
    lo[k] = b.center[k] - b.radius;
    hi[k] = b.center[k] + b.radius;
  }
}

Shape make_regular_polygon(int sides, double target_area) {
  if (sides != 3 && sides != 4 && sides != 6)
    throw std::invalid_argument("make_regular_polygon: supported side counts are 3, 4, 6");
  if (!(target_area > 0.0) || !std::isfinite(target_area))
    throw std::invalid_argument("make_regular_polygon: target area must be positive");
  // k isoceles fan triangles of apex angle 2*pi/k: area = k/2 * rho^2 * sin(2*pi/k)
  const double step = 2.0 * kPi / sides;
  const double rho = std::sqrt(2.0 * target_area / (sides * std::sin(step)));
  std::vector<Vec2> v;
  v.reserve(sides);
  for (int j = 0; j < sides; ++j)
    v.push_back(Vec2{rho * std::cos(step * j), rho * std::sin(step * j)});
  return Shape{ConvexPolygon{std::move(v)}};
}

double min_interior_angle(const ConvexPolygon& p) {
  const auto& v = p.vertices;
  const size_t n = v.size();
  double best = kPi;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
    const Vec2 e1{b.x - a.x, b.y - a.y};
    const Vec2 e2{c.x - b.x, c.y - b.y};
    const double turn = std::atan2(cross(e1, e2), dot(e1, e2));
    best = std::min(best, kPi - turn);
  }
  return best;
}

double polygon_perimeter(const ConvexPolygon& p) {
  const auto& v = p.vertices;
  double acc = 0.0;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    acc += std::sqrt(norm2(Vec2{b.x - a.x, b.y - a.y}));
  }
  return acc;
}

Vec2 polygon_centroid(const ConvexPolygon& p) {
  const auto& v = p.vertices;
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 s = v[i], t = v[(i + 1) % n];
    const double w = cross(s, t);
    a += w;
    cx += (s.x + t.x) * w;
    cy += (s.y + t.y) * w;
  }
  return Vec2{cx / (3.0 * a), cy / (3.0 * a)};
}

Vec2 polygon_boundary_point(const ConvexPolygon& p, double s) {
  const double total = polygon_perimeter(p);
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  const auto& v = p.vertices;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    const double len = std::sqrt(norm2(Vec2{b.x - a.x, b.y - a.y}));
    if (s <= len || i + 1 == n) {
      const double t = s / len;
      return Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
    s -= len;
  }
  return v[0];  // unreachable
}

double cap_volume(int d, double R, double a) {
  a = std::clamp(a, -R, R);
  switch (d) {
    case 1:
      return R - a;
    case 2:
      return R * R * std::acos(a / R) - a * std::sqrt(std::max(0.0, R * R - a * a));
    case 3:
      return kPi / 3.0 * (R - a) * (R - a) * (2.0 * R + a);
    case 4: {
      // antiderivative of w_3 * (R^2 - t^2)^{3/2} on [a, R]
      const auto F = [R](double t) {
        const double q = std::max(0.0, R * R - t * t);
        const double s = std::sqrt(q);
        return t * q * s / 4.0 + 3.0 / 8.0 * R * R * t * s +
               3.0 / 8.0 * pow_int(R, 4) * std::asin(std::clamp(t / R, -1.0, 1.0));
      };
      return unit_ball_volume(3) * (F(R) - F(a));
    }
    default:
      throw std::invalid_argument("cap_volume: dimension must be in 1..4");
  }
}

double two_ball_intersection(int d, double R1, double R2, double rho) {
  if (d < 1 || d > 4)
    throw std::invalid_argument("two_ball_intersection: dimension must be in 1..4");
  if (rho >= R1 + R2) return 0.0;
  if (rho + R2 <= R1) return unit_ball_volume(d) * pow_int(R2, d);
  if (rho + R1 <= R2) return unit_ball_volume(d) * pow_int(R1, d);
  const double a1 = (rho * rho + R1 * R1 - R2 * R2) / (2.0 * rho);
  const double a2 = rho - a1;
  return cap_volume(d, R1, a1) + cap_volume(d, R2, a2);
}

namespace {

// Area of B(c,r) ∩ polygon by Green's theorem: walk each directed edge, split
// it at the circle crossings, and charge inside pieces the chord triangle
// cross(p0,p1)/2 and outside pieces the arc sector r^2 * angle(p0,p1)/2.
// Every outside piece subtends < pi from the center, so atan2 is safe.
double disk_polygon_area(const ConvexPolygon& poly, Vec2 c, double r) {
  const double r2 = r * r;
  double acc = 0.0;
  const auto& v = poly.vertices;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec2 a{v[i].x - c.x, v[i].y - c.y};
    const Vec2 b{v[(i + 1) % n].x - c.x, v[(i + 1) % n].y - c.y};
    const Vec2 u{b.x - a.x, b.y - a.y};
    const double uu = norm2(u);
    if (uu == 0.0) continue;
    double t_lo = 2.0, t_hi = 2.0;
    const double au = dot(a, u);
    const double disc = au * au - uu * (norm2(a) - r2);
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      t_lo = (-au - sq) / uu;
      t_hi = (-au + sq) / uu;
    }
    double cuts[4] = {0.0, std::clamp(t_lo, 0.0, 1.0), std::clamp(t_hi, 0.0, 1.0), 1.0};
    std::sort(cuts, cuts + 4);
    for (int k = 0; k < 3; ++k) {
      const double t0 = cuts[k], t1 = cuts[k + 1];
      if (!(t1 > t0)) continue;
      const Vec2 p0{a.x + t0 * u.x, a.y + t0 * u.y};
      const Vec2 p1{a.x + t1 * u.x, a.y + t1 * u.y};
      const double tm = 0.5 * (t0 + t1);
      const Vec2 m{a.x + tm * u.x, a.y + tm * u.y};
      if (norm2(m) <= r2)
        acc += 0.5 * cross(p0, p1);
      else
        acc += 0.5 * r2 * std::atan2(cross(p0, p1), dot(p0, p1));
    }
  }
  return std::max(0.0, acc);
}

}  // namespace

double ball_shape_intersection(const Shape& s, std::span<const double> x, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("ball_shape_intersection: radius must be positive");
  if (const auto* p = std::get_if<ConvexPolygon>(&s)) {
    if (x.size() != 2) throw std::invalid_argument("point dimension mismatch");
    return disk_polygon_area(*p, Vec2{x[0], x[1]}, r);
  }
  const Ball& b = std::get<Ball>(s);
  if (x.size() != static_cast<size_t>(b.dim))
    throw std::invalid_argument("point dimension mismatch");
  double rho2 = 0.0;
  for (int k = 0; k < b.dim; ++k) {
    const double t = x[k] - b.center[k];
    rho2 += t * t;
  }
  return two_ball_intersection(b.dim, b.radius, r, std::sqrt(rho2));
}

double uniform_upsilon(const Shape& s) {
  if (const auto* p = std::get_if<ConvexPolygon>(&s))
    return min_interior_angle(*p) / (2.0 * kPi * shoelace_area(p->vertices));
  return 1.0 / (2.0 * area(s));
}

}  // namespace standardness
