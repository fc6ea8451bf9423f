#pragma once
// Sampleable probability laws: uniform on a shape, and the fixed non-uniform
// radial law on the unit disk.

#include <optional>
#include <span>
#include <variant>

#include "standardness/cloud.hpp"
#include "standardness/geometry.hpp"
#include "standardness/rng.hpp"

namespace standardness {

struct UniformOnShape {
  Shape shape;
};

// Mixture on B(0,1) in the plane: with probability 1/4 draw Y1 = R^{1/2} *
// (cos t, sin t) (uniform on the disk), else Y2 = R^{1/4} * (cos t, sin t)
// (density rising as ||y||^2, antimode at the origin); R, t independent
// uniforms. Density 1/(4*pi) + 3/(2*pi) * ||y||^2, minimum 1/(4*pi) at 0.
struct RadialCombination {};

using Distribution = std::variant<UniformOnShape, RadialCombination>;

Shape support(const Distribution& dist);

// n i.i.d. draws. Uniform on polygon: centroid-fan triangulation, triangle
// picked by area, then the square-root map to each triangle; uniform on a
// ball: gaussian direction times radius R*U^{1/d}. Consumes a fixed number of
// uniforms per point, so streams stay aligned across laws of the same kind.
SampleCloud sample(const Distribution& dist, std::int64_t n, Stream& stream);

struct NuBallResult {
  double value = 0.0;
  double std_error = 0.0;  // 0 for the exact path
  bool exact = true;
};

// nu(B(x,r)). Uniform laws: exact, ball_shape_intersection / area. The radial
// law has no closed ball-mass off-center: Monte Carlo with mc_budget draws
// from a dedicated stream (SeedSpec{kGolden}.stream(0,0)), reinitialized per
// call so results do not depend on call order. mc_budget below 10^4 for the
// Monte Carlo path is an error.
NuBallResult nu_ball(const Distribution& dist, std::span<const double> x, double r,
                     std::int64_t mc_budget = 1'000'000);

// Closed-form standardness constant: uniform on polygon P ->
// min_interior_angle/(2*pi*area), uniform on a d-ball -> 1/(2*area), radial
// law -> 1/(4*pi). nullopt marks laws without a closed form, callers fall
// back to the numeric oracle.
std::optional<double> analytic_upsilon(const Distribution& dist);

}  // namespace standardness
