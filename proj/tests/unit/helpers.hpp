#pragma once
// Shared test fixtures: low-discrepancy integration oracles, chi-square
// partitions with frozen critical values, and a structural validator for the
// shipped JSON schemas.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "standardness/geometry.hpp"

namespace testhelpers {

// Halton low-discrepancy sequence, one van der Corput digit reversal per base.
inline double van_der_corput(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

inline const std::uint64_t kHaltonBases[6] = {2, 3, 5, 7, 11, 13};

// Volume of {x in box : inside(x)} by averaging the indicator over a Halton
// point set. Deterministic integration oracle, error ~ N^{-2/3} for smooth
// boundaries in low dimension.
inline double qmc_volume(std::span<const double> lo, std::span<const double> hi,
                         std::int64_t n_points,
                         const std::function<bool(std::span<const double>)>& inside) {
  const std::size_t d = lo.size();
  double box = 1.0;
  for (std::size_t k = 0; k < d; ++k) box *= hi[k] - lo[k];
  std::vector<double> x(d);
  std::int64_t hits = 0;
  for (std::int64_t i = 1; i <= n_points; ++i) {
    for (std::size_t k = 0; k < d; ++k)
      x[k] = lo[k] +
             (hi[k] - lo[k]) *
                 van_der_corput(static_cast<std::uint64_t>(i), kHaltonBases[k]);
    if (inside(x)) ++hits;
  }
  return box * static_cast<double>(hits) / static_cast<double>(n_points);
}

// Upper chi-square quantiles at tail probability 1e-4 (30-digit computation,
// rounded): a seeded sampler whose statistic exceeds these is broken with
// overwhelming probability.
inline constexpr double kChiSqCrit3 = 21.1075134661602;
inline constexpr double kChiSqCrit5 = 25.7448319590559;
inline constexpr double kChiSqCrit15 = 44.2632249441750;

// Chi-square statistic for equally probable bins.
inline double chi_square_equal(const std::vector<std::int64_t>& observed,
                               std::int64_t total) {
  const double expected =
      static_cast<double>(total) / static_cast<double>(observed.size());
  double stat = 0.0;
  for (const std::int64_t o : observed) {
    const double e = static_cast<double>(o) - expected;
    stat += e * e / expected;
  }
  return stat;
}

inline bool point_in_triangle(double px, double py, standardness::Vec2 a,
                              standardness::Vec2 b, standardness::Vec2 c) {
  const auto side = [](double x, double y, standardness::Vec2 p,
                       standardness::Vec2 q) {
    return (q.x - p.x) * (y - p.y) - (q.y - p.y) * (x - p.x);
  };
  const double s1 = side(px, py, a, b);
  const double s2 = side(px, py, b, c);
  const double s3 = side(px, py, c, a);
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

// Structural check against the JSON-schema subset the shipped schemas use:
// type (name or list), required, properties, items, enum,
// additionalProperties (boolean). Returns an error path or "" when valid.
inline std::string schema_check(const nlohmann::json& schema,
                                const nlohmann::json& value,
                                const std::string& path = "$") {
  using nlohmann::json;
  if (auto it = schema.find("enum"); it != schema.end()) {
    for (const json& option : *it)
      if (option == value) return "";
    return path + ": not in enum";
  }
  if (auto it = schema.find("type"); it != schema.end()) {
    const auto matches = [&](const std::string& t) {
      if (t == "object") return value.is_object();
      if (t == "array") return value.is_array();
      if (t == "string") return value.is_string();
      if (t == "boolean") return value.is_boolean();
      if (t == "null") return value.is_null();
      if (t == "number") return value.is_number();
      if (t == "integer") return value.is_number_integer() ||
                                 (value.is_number() &&
                                  value.get<double>() ==
                                      std::floor(value.get<double>()));
      return false;
    };
    bool ok = false;
    if (it->is_array()) {
      for (const json& t : *it) ok = ok || matches(t.get<std::string>());
    } else {
      ok = matches(it->get<std::string>());
    }
    if (!ok) return path + ": type mismatch";
  }
  if (value.is_object()) {
    if (auto it = schema.find("required"); it != schema.end())
      for (const nlohmann::json& key : *it)
        if (!value.contains(key.get<std::string>()))
          return path + ": missing required " + key.get<std::string>();
    const auto props = schema.find("properties");
    for (const auto& [key, sub] : value.items()) {
      if (props != schema.end() && props->contains(key)) {
        const std::string err = schema_check((*props)[key], sub, path + "." + key);
        if (!err.empty()) return err;
      } else if (schema.value("additionalProperties", true) == false) {
        return path + ": unexpected key " + key;
      }
    }
  }
  if (value.is_array()) {
    if (auto it = schema.find("items"); it != schema.end())
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string err = schema_check(
            *it, value[i], path + "[" + std::to_string(i) + "]");
        if (!err.empty()) return err;
      }
  }
  return "";
}

}  // namespace testhelpers
