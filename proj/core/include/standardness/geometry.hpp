#pragma once
// Planar convex polygons and d-balls: measures, exact ball intersections,
// and closed-form standardness constants for uniform laws.
//
// Conventions: all balls are closed (boundary points are inside), all norms
// Euclidean. Polygon vertices are counter-clockwise and strictly convex.

#include <span>
#include <variant>
#include <vector>

namespace standardness {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// Strictly convex, counter-clockwise, >= 3 vertices; validated on construction
// (throws std::invalid_argument on a degenerate, reflex, or wound polygon).
struct ConvexPolygon {
  std::vector<Vec2> vertices;
  explicit ConvexPolygon(std::vector<Vec2> v);
};

struct Ball {
  int dim = 0;
  std::vector<double> center;  // center.size() == dim
  double radius = 0.0;
  Ball(int dim_, std::vector<double> center_, double radius_);
};

using Shape = std::variant<ConvexPolygon, Ball>;

// x^k by repeated multiplication. Unlike std::pow this commutes exactly with
// power-of-two scaling of x, which the scale-covariance guarantees rely on.
double pow_int(double x, int k);

// Lebesgue measure of the unit ball in R^d, built from the recurrence
// w_d = w_{d-2} * 2*pi/d off w_1 = 2, w_2 = pi. Throws for d < 1.
double unit_ball_volume(int d);

int shape_dim(const Shape& s);
double area(const Shape& s);  // Lebesgue measure of the shape
double diameter(const Shape& s);

// Closed containment with a 1e-12 * diameter slack so that sampler outputs
// sitting on the boundary up to roundoff still count as inside.
bool contains(const Shape& s, std::span<const double> x);

// Axis-aligned bounds; lo/hi must have shape_dim(s) entries.
void bounding_box(const Shape& s, std::span<double> lo, std::span<double> hi);

// Regular k-gon, k in {3, 4, 6}, centered at the origin with one vertex on the
// positive x-axis, scaled so area(result) == target_area (1e-12 relative).
Shape make_regular_polygon(int sides, double target_area);

double min_interior_angle(const ConvexPolygon& p);
double polygon_perimeter(const ConvexPolygon& p);
Vec2 polygon_centroid(const ConvexPolygon& p);  // area centroid

// Point at arclength s along the boundary, measured from vertices[0]; s wraps.
Vec2 polygon_boundary_point(const ConvexPolygon& p, double s);

// Volume of the slab cap {p in B(0,R) subset R^d : p_1 >= a}, a in [-R, R],
// closed forms for d in {1,2,3,4}.
double cap_volume(int d, double R, double a);

// Volume of B(0,R1) ∩ B(c,R2) with |c| = rho, d in {1,2,3,4}.
double two_ball_intersection(int d, double R1, double R2, double rho);

// mu(B(x,r) ∩ shape), exact: per-edge chord/arc decomposition for polygons,
// cap volumes for balls. Throws on dimension mismatch and on ball dims > 4.
double ball_shape_intersection(const Shape& s, std::span<const double> x, double r);

// min interior angle / (2*pi*area) for polygons, 1/(2*area) for balls: the
// standardness constant of the uniform law on the shape.
double uniform_upsilon(const Shape& s);

}  // namespace standardness
