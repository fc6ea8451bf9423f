#pragma once
// JSON and CSV wire formats. JSON shapes:
//   shape         {"type":"polygon","vertices":[[x,y],...]}
//                 {"type":"ball","dim":d,"center":[...],"radius":r}
//   distribution  {"type":"uniform","shape":<shape>} | {"type":"radial_combination"}
// Parse errors surface as std::invalid_argument with a path-ish message.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "standardness/estimator.hpp"
#include "standardness/experiments.hpp"
#include "standardness/geometry.hpp"
#include "standardness/oracle.hpp"
#include "standardness/sampling.hpp"

namespace standardness::io {

Shape shape_from_json(const std::string& text);
std::string shape_to_json(const Shape& shape);

Distribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const Distribution& dist);

// Partial object: absent keys keep their defaults.
OracleConfig oracle_config_from_json(const std::string& text);

ExperimentSpec experiment_spec_from_json(const std::string& text);
std::string experiment_spec_to_json(const ExperimentSpec& spec);

std::string report_to_json(const ExperimentReport& report);
// Two rows per completed cell (estimator = hat | tilde), columns
// dist_id,d,n,estimator,mean,variance,upsilon_true,r,reps,seed;
// unknown variance / upsilon_true written as NA. Failed cells are omitted.
std::string report_to_csv(const ExperimentReport& report);

std::string estimate_to_json(const EstimateResult& est);

// One point per row, comma separated. dim 0 infers the width from the first
// row; a positive dim must match it. header skips the first line.
SampleCloud read_cloud_csv(std::istream& in, int dim = 0, bool header = false);
void write_cloud_csv(std::ostream& out, const SampleCloud& cloud);

// '#' comment lines, then a dist_id,d,n,estimator,mean,variance header row.
std::vector<ReferenceRow> read_reference_csv(std::istream& in);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace standardness::io
