#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "standardness/sampling.hpp"

namespace standardness {

enum class RadiusRule { Default, Fixed };

struct CellSpec {
  std::string id;  // row label in reports ("square", "ball3", ...)
  Distribution dist = RadialCombination{};
  std::int64_t n = 0;
  int replications = 1;
  RadiusRule radius_rule = RadiusRule::Default;
  double fixed_radius = 0.0;  // only read when radius_rule == Fixed
};

struct ExperimentSpec {
  std::vector<CellSpec> cells;
  std::uint64_t master_seed = 47;
  int parallelism = 0;  // max concurrent replications, 0 = hardware
};

struct CellReport {
  std::string id;
  int d = 0;
  std::int64_t n = 0;
  double mean_hat = 0.0;
  std::optional<double> var_hat;  // empty when replications == 1
  double mean_tilde = 0.0;
  std::optional<double> var_tilde;
  std::optional<double> upsilon_true;
  double r_used = 0.0;
  double wall_time = 0.0;  // seconds, excluded from determinism checks
  int reps_completed = 0;
  bool failed = false;
  std::string error;  // names the replication index on failure
};

struct ExperimentReport {
  std::uint64_t master_seed = 0;
  std::vector<CellReport> cells;
};

// Runs every replication of one cell. Replication k draws its sample from the
// child stream (cell_index, k) of master_seed, so reports are identical for
// any parallelism setting and a shorter run is a prefix of a longer one.
CellReport run_cell(const CellSpec& cell, std::size_t cell_index,
                    std::uint64_t master_seed, int parallelism = 0);

// Runs cells sequentially (replications fan out per cell) and attaches
// upsilon_true from the closed form when one exists, falling back to the
// numeric minimum-ball oracle.
ExperimentReport run_experiment(const ExperimentSpec& spec);

struct ReferenceRow {
  std::string dist_id;
  int d = 0;
  std::int64_t n = 0;
  std::string estimator;  // "hat" | "tilde"
  double mean = 0.0;
  double variance = 0.0;
};

struct Verdict {
  std::string dist_id;
  std::int64_t n = 0;
  std::string estimator;
  double got = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ComparisonResult {
  std::vector<Verdict> verdicts;
  bool pass = false;
};

// Matches every reference row against the report cell with the same id and n
// (error when absent). Row tolerance is `tolerance` when given, otherwise
// 0.006 for d=2 and 0.01 for d>=3, scaled by tolerance_scale (reduced-budget
// runs use 2).
ComparisonResult compare_to_reference(const ExperimentReport& report,
                                      const std::vector<ReferenceRow>& reference,
                                      std::optional<double> tolerance = {},
                                      double tolerance_scale = 1.0);

// Built-in experiment grids: table 1 = area-1 triangle/square/hexagon/disk,
// table 2 = volume-1 balls in d=3,4, table 3 = the radial mixture; each over
// n in {1000,3000,5000,7000,9000}.
ExperimentSpec table_spec(int table, int replications = 500,
                          std::uint64_t master_seed = 47);

// Published means and variances the table specs are checked against.
const std::vector<ReferenceRow>& reference_table(int table);

}  // namespace standardness
