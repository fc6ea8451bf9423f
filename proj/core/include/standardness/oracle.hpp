#pragma once
// Numeric ground truth independent of the sample-based estimators: minimum
// normalized ball-mass over the support, and the gap curve against the true
// constant with its log-log slope.

#include <optional>
#include <vector>

#include "standardness/sampling.hpp"

namespace standardness {

struct OracleConfig {
  int boundary_grid = 2000;  // probes per boundary sweep, >= 100
  int interior_grid = 50;    // lattice points per axis, >= 20
  int refine_iters = 3;      // local refinement rounds around the best probe
  std::int64_t mc_budget = 1'000'000;  // draws for Monte Carlo ball masses, >= 10^4
};

struct MinBallResult {
  double value = 0.0;
  std::vector<double> argmin;
  double std_error = 0.0;  // 0 on the exact path; uncertainty is 3 * std_error
};

// min over a probe set (boundary sweep ∪ interior lattice ∪ shrinking local
// refinements around the incumbent) of nu(B(x,r)) / (omega_d r^d). Exact
// geometry for uniform laws (bitwise identical across calls); the radial law
// scores probes against one shared mc_budget-point sample, with the binomial
// std error of the winning probe reported. Ties break toward the
// lexicographically smallest probe. Throws when r is not below the support
// diameter.
MinBallResult min_ball_fraction(const Distribution& dist, double r,
                                const OracleConfig& cfg = {});

// |min_ball_fraction(dist, r) - upsilon_true|
double omega(const Distribution& dist, double r, double upsilon_true,
             const OracleConfig& cfg = {});

struct OmegaCurve {
  std::vector<double> radii;  // strictly decreasing
  std::vector<double> values;  // min-ball fraction per radius
  std::vector<double> omega_values;
  std::vector<std::vector<double>> argmins;
};

struct OmegaCurveResult {
  OmegaCurve curve;
  // least-squares slope of log omega vs log r over the usable points; absent
  // when fewer than 3 clear the noise floor (1e-9 on the exact path, 3 * SE
  // on the Monte Carlo path, so an exactly-zero polygonal gap never counts)
  std::optional<double> slope;
};

OmegaCurveResult omega_curve(const Distribution& dist, const std::vector<double>& radii,
                             double upsilon_true, const OracleConfig& cfg = {});

}  // namespace standardness
