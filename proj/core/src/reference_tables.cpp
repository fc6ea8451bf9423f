#include "standardness/experiments.hpp"

#include <stdexcept>

namespace standardness {

namespace {

// Published means with their bracketed variances, one block per table,
// transcribed as {dist_id, d, n, estimator, mean, variance}. The CSV files
// under data/reference/ carry the same rows; a test keeps the two in sync.
const std::vector<ReferenceRow>& table1_rows() {
  static const std::vector<ReferenceRow> rows{
      {"triangle", 2, 1000, "hat", 0.1765, 0.0005},
      {"triangle", 2, 3000, "hat", 0.1758, 0.0003},
      {"triangle", 2, 5000, "hat", 0.1745, 0.0002},
      {"triangle", 2, 7000, "hat", 0.1730, 0.0002},
      {"triangle", 2, 9000, "hat", 0.1735, 0.0001},
      {"triangle", 2, 1000, "tilde", 0.1829, 0.0007},
      {"triangle", 2, 3000, "tilde", 0.1782, 0.0004},
      {"triangle", 2, 5000, "tilde", 0.1761, 0.0002},
      {"triangle", 2, 7000, "tilde", 0.1742, 0.0002},
      {"triangle", 2, 9000, "tilde", 0.1745, 0.0001},
      {"square", 2, 1000, "hat", 0.2510, 0.0006},
      {"square", 2, 3000, "hat", 0.2520, 0.0003},
      {"square", 2, 5000, "hat", 0.2527, 0.0003},
      {"square", 2, 7000, "hat", 0.2523, 0.0002},
      {"square", 2, 9000, "hat", 0.2521, 0.0002},
      {"square", 2, 1000, "tilde", 0.2767, 0.0014},
      {"square", 2, 3000, "tilde", 0.2606, 0.0004},
      {"square", 2, 5000, "tilde", 0.2581, 0.0003},
      {"square", 2, 7000, "tilde", 0.2563, 0.0002},
      {"square", 2, 9000, "tilde", 0.2552, 0.0002},
      {"hexagon", 2, 1000, "hat", 0.3190, 0.0005},
      {"hexagon", 2, 3000, "hat", 0.3236, 0.0003},
      {"hexagon", 2, 5000, "hat", 0.3246, 0.0002},
      {"hexagon", 2, 7000, "hat", 0.3251, 0.0002},
      {"hexagon", 2, 9000, "hat", 0.3250, 0.0002},
      {"hexagon", 2, 1000, "tilde", 0.4014, 0.0023},
      {"hexagon", 2, 3000, "tilde", 0.3650, 0.0009},
      {"hexagon", 2, 5000, "tilde", 0.3519, 0.0006},
      {"hexagon", 2, 7000, "tilde", 0.3453, 0.0004},
      {"hexagon", 2, 9000, "tilde", 0.3407, 0.0003},
      {"disk", 2, 1000, "hat", 0.3813, 0.0004},
      {"disk", 2, 3000, "hat", 0.4048, 0.0002},
      {"disk", 2, 5000, "hat", 0.4131, 0.0002},
      {"disk", 2, 7000, "hat", 0.4201, 0.0001},
      {"disk", 2, 9000, "hat", 0.4231, 0.0001},
      {"disk", 2, 1000, "tilde", 0.5380, 0.0025},
      {"disk", 2, 3000, "tilde", 0.5190, 0.0008},
      {"disk", 2, 5000, "tilde", 0.5088, 0.0006},
      {"disk", 2, 7000, "tilde", 0.5064, 0.0005},
      {"disk", 2, 9000, "tilde", 0.5015, 0.0004},
  };
  return rows;
}

const std::vector<ReferenceRow>& table2_rows() {
  static const std::vector<ReferenceRow> rows{
      {"ball3", 3, 1000, "hat", 0.3110, 0.00021},
      {"ball3", 3, 3000, "hat", 0.3385, 0.00011},
      {"ball3", 3, 5000, "hat", 0.3496, 0.00009},
      {"ball3", 3, 7000, "hat", 0.3579, 0.00008},
      {"ball3", 3, 9000, "hat", 0.3634, 0.00007},
      {"ball3", 3, 1000, "tilde", 0.5209, 0.00150},
      {"ball3", 3, 3000, "tilde", 0.5203, 0.00072},
      {"ball3", 3, 5000, "tilde", 0.5151, 0.00055},
      {"ball3", 3, 7000, "tilde", 0.5139, 0.00044},
      {"ball3", 3, 9000, "tilde", 0.5119, 0.00040},
      {"ball4", 4, 1000, "hat", 0.2485, 0.00013},
      {"ball4", 4, 3000, "hat", 0.2766, 0.00007},
      {"ball4", 4, 5000, "hat", 0.2897, 0.00006},
      {"ball4", 4, 7000, "hat", 0.2982, 0.00005},
      {"ball4", 4, 9000, "hat", 0.3043, 0.00004},
      {"ball4", 4, 1000, "tilde", 0.4438, 0.00087},
      {"ball4", 4, 3000, "tilde", 0.4620, 0.00047},
      {"ball4", 4, 5000, "tilde", 0.4677, 0.00037},
      {"ball4", 4, 7000, "tilde", 0.4712, 0.00033},
      {"ball4", 4, 9000, "tilde", 0.4728, 0.00026},
  };
  return rows;
}

const std::vector<ReferenceRow>& table3_rows() {
  static const std::vector<ReferenceRow> rows{
      {"radial", 2, 1000, "hat", 0.0857, 0.000212},
      {"radial", 2, 3000, "hat", 0.0789, 0.000109},
      {"radial", 2, 5000, "hat", 0.0775, 0.000073},
      {"radial", 2, 7000, "hat", 0.0768, 0.000064},
      {"radial", 2, 9000, "hat", 0.0771, 0.000060},
      {"radial", 2, 1000, "tilde", 0.0924, 0.000399},
      {"radial", 2, 3000, "tilde", 0.0817, 0.000145},
      {"radial", 2, 5000, "tilde", 0.0798, 0.000093},
      {"radial", 2, 7000, "tilde", 0.0787, 0.000081},
      {"radial", 2, 9000, "tilde", 0.0789, 0.000074},
  };
  return rows;
}

}  // namespace

const std::vector<ReferenceRow>& reference_table(int table) {
  switch (table) {
    case 1:
      return table1_rows();
    case 2:
      return table2_rows();
    case 3:
      return table3_rows();
    default:
      throw std::invalid_argument("reference_table: table must be 1, 2 or 3");
  }
}

}  // namespace standardness
