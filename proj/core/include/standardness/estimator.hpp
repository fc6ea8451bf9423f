#pragma once
// Plug-in and bias-corrected standardness estimators over an exact
// fixed-radius neighbor counting engine.
//
// Counting convention: closed Euclidean balls, ||Xi - Xj|| <= r compared as
// squared distance against r*r, every point counts itself, duplicates count
// with multiplicity. counts[j] >= 1 always.

#include <cstdint>
#include <vector>

#include "standardness/cloud.hpp"

namespace standardness {

// Uniform grid with cell edge equal to the query radius; candidate neighbors
// of a point live in the 3^d adjacent cells. The origin is pinned to the
// cloud's min corner, so translating a cloud (exactly, in floating point)
// re-buckets every point identically. Dense cell storage when the lattice is
// small, lexicographically sorted cell keys otherwise (tiny radii).
struct GridIndex {
  double cell_size = 0.0;
  int dim = 0;
  std::vector<double> origin;         // bounding-box min corner
  std::vector<std::int64_t> extents;  // cells per axis
  std::vector<std::int32_t> order;    // point ids grouped by cell
  bool dense = true;
  // dense: prefix offsets into order, one per linear cell id (+1 sentinel)
  std::vector<std::int64_t> bucket_begin;
  // sparse: occupied cells as lexicographically sorted coordinate tuples
  // (ncells * dim), with matching offset ranges in order
  std::vector<std::int64_t> cell_keys;
  std::vector<std::int64_t> cell_begin;

  static GridIndex build(const SampleCloud& cloud, double r);
};

// number of cloud points within distance g.cell_size of x (closed ball),
// for an arbitrary query point x
std::int64_t count_within(const SampleCloud& cloud, const GridIndex& g,
                          std::span<const double> x);

// counts[j] = #{ i : ||Xi - Xj|| <= r }, exact. threads > 1 switches from the
// symmetric pair sweep to a one-sided per-point scan partitioned over
// threads; both paths evaluate the same predicates, so the result is
// identical for every thread count.
std::vector<std::int32_t> neighbor_counts(const SampleCloud& cloud, double r,
                                          int threads = 1);

// Reference O(n^2) double loop; same predicates as the grid path.
std::vector<std::int32_t> naive_neighbor_counts(const SampleCloud& cloud, double r);

// (ln n / n)^(1/(2d)). n may be any real >= 2.
double default_radius(double n, int d);

struct EstimateResult {
  std::int64_t n = 0;
  int d = 0;
  double r = 0.0;
  double upsilon_hat = 0.0;
  double upsilon_tilde = 0.0;
  std::int64_t a_count = 0;    // in [1, n]
  std::int64_t min_count = 0;  // >= 1
};

// min_j (counts[j]/n) / (omega_d r^d)
double plugin_estimate(const SampleCloud& cloud, double r, int threads = 1);

// Both estimators from precomputed neighbor counts (grid or naive).
EstimateResult estimate_from_counts(const std::vector<std::int32_t>& counts,
                                    std::int64_t n, int d, double r,
                                    double slack_scale = 1.0);

// Plug-in value plus the correction factor (1 + #A/n), where A collects the
// indices with counts[i] <= min_count * (1 + slack_scale * omega_d * r^{d/2})
// (the closed threshold keeps the argmin a member, so a_count >= 1 and
// upsilon_hat < upsilon_tilde <= 2*upsilon_hat structurally). slack_scale
// rescales the slack for sensitivity studies; 1.0 is the estimator.
EstimateResult bias_corrected_estimate(const SampleCloud& cloud, double r,
                                       int threads = 1, double slack_scale = 1.0);

}  // namespace standardness
