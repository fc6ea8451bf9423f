#include "standardness/io.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace standardness::io {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

const json& field(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string(ctx) + ": missing \"" + key +
                                "\"");
  return *it;
}

double num(const json& j, const char* ctx) {
  if (!j.is_number())
    throw std::invalid_argument(std::string(ctx) + ": expected a number");
  return j.get<double>();
}

Shape shape_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("shape: expected an object");
  const std::string type = field(j, "type", "shape").get<std::string>();
  if (type == "polygon") {
    const json& verts = field(j, "vertices", "polygon");
    if (!verts.is_array())
      throw std::invalid_argument("polygon: vertices must be an array");
    std::vector<Vec2> pts;
    for (const json& v : verts) {
      if (!v.is_array() || v.size() != 2)
        throw std::invalid_argument("polygon: vertex must be [x, y]");
      pts.push_back({num(v[0], "vertex"), num(v[1], "vertex")});
    }
    return ConvexPolygon(std::move(pts));
  }
  if (type == "ball") {
    const int dim = field(j, "dim", "ball").get<int>();
    const json& c = field(j, "center", "ball");
    if (!c.is_array())
      throw std::invalid_argument("ball: center must be an array");
    std::vector<double> center;
    for (const json& x : c) center.push_back(num(x, "center"));
    return Ball(dim, std::move(center), num(field(j, "radius", "ball"), "radius"));
  }
  throw std::invalid_argument("shape: unknown type \"" + type + "\"");
}

json shape_to(const Shape& shape) {
  json j;
  if (const auto* poly = std::get_if<ConvexPolygon>(&shape)) {
    j["type"] = "polygon";
    json verts = json::array();
    for (const Vec2& v : poly->vertices) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
  } else {
    const Ball& b = std::get<Ball>(shape);
    j["type"] = "ball";
    j["dim"] = b.dim;
    j["center"] = b.center;
    j["radius"] = b.radius;
  }
  return j;
}

Distribution distribution_from(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("distribution: expected an object");
  const std::string type = field(j, "type", "distribution").get<std::string>();
  if (type == "uniform")
    return UniformOnShape{shape_from(field(j, "shape", "uniform"))};
  if (type == "radial_combination") return RadialCombination{};
  throw std::invalid_argument("distribution: unknown type \"" + type + "\"");
}

json distribution_to(const Distribution& dist) {
  json j;
  if (const auto* u = std::get_if<UniformOnShape>(&dist)) {
    j["type"] = "uniform";
    j["shape"] = shape_to(u->shape);
  } else {
    j["type"] = "radial_combination";
  }
  return j;
}

json cell_spec_to(const CellSpec& cell) {
  json j;
  j["id"] = cell.id;
  j["dist"] = distribution_to(cell.dist);
  j["n"] = cell.n;
  j["replications"] = cell.replications;
  if (cell.radius_rule == RadiusRule::Fixed)
    j["radius"] = {{"rule", "fixed"}, {"value", cell.fixed_radius}};
  else
    j["radius"] = {{"rule", "default"}};
  return j;
}

CellSpec cell_spec_from(const json& j, std::size_t index) {
  if (!j.is_object()) throw std::invalid_argument("cell: expected an object");
  CellSpec cell;
  cell.id = j.value("id", "cell" + std::to_string(index));
  cell.dist = distribution_from(field(j, "dist", "cell"));
  cell.n = field(j, "n", "cell").get<std::int64_t>();
  cell.replications = j.value("replications", 1);
  if (auto it = j.find("radius"); it != j.end()) {
    const std::string rule = field(*it, "rule", "radius").get<std::string>();
    if (rule == "fixed") {
      cell.radius_rule = RadiusRule::Fixed;
      cell.fixed_radius = num(field(*it, "value", "radius"), "radius value");
    } else if (rule != "default") {
      throw std::invalid_argument("radius: unknown rule \"" + rule + "\"");
    }
  }
  return cell;
}

}  // namespace

Shape shape_from_json(const std::string& text) {
  return shape_from(parse(text, "shape"));
}

std::string shape_to_json(const Shape& shape) { return shape_to(shape).dump(); }

Distribution distribution_from_json(const std::string& text) {
  return distribution_from(parse(text, "distribution"));
}

std::string distribution_to_json(const Distribution& dist) {
  return distribution_to(dist).dump();
}

OracleConfig oracle_config_from_json(const std::string& text) {
  const json j = parse(text, "oracle config");
  if (!j.is_object())
    throw std::invalid_argument("oracle config: expected an object");
  OracleConfig cfg;
  cfg.boundary_grid = j.value("boundary_grid", cfg.boundary_grid);
  cfg.interior_grid = j.value("interior_grid", cfg.interior_grid);
  cfg.refine_iters = j.value("refine_iters", cfg.refine_iters);
  cfg.mc_budget = j.value("mc_budget", cfg.mc_budget);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "boundary_grid" && key != "interior_grid" &&
        key != "refine_iters" && key != "mc_budget")
      throw std::invalid_argument("oracle config: unknown key \"" + key +
                                  "\"");
  }
  return cfg;
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  const json j = parse(text, "experiment spec");
  if (!j.is_object())
    throw std::invalid_argument("experiment spec: expected an object");
  ExperimentSpec spec;
  spec.master_seed = j.value("master_seed", spec.master_seed);
  spec.parallelism = j.value("parallelism", spec.parallelism);
  const json& cells = field(j, "cells", "experiment spec");
  if (!cells.is_array())
    throw std::invalid_argument("experiment spec: cells must be an array");
  for (std::size_t i = 0; i < cells.size(); ++i)
    spec.cells.push_back(cell_spec_from(cells[i], i));
  return spec;
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  json j;
  j["master_seed"] = spec.master_seed;
  j["parallelism"] = spec.parallelism;
  json cells = json::array();
  for (const CellSpec& cell : spec.cells) cells.push_back(cell_spec_to(cell));
  j["cells"] = std::move(cells);
  return j.dump();
}

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["master_seed"] = report.master_seed;
  json cells = json::array();
  for (const CellReport& c : report.cells) {
    json e;
    e["id"] = c.id;
    e["d"] = c.d;
    e["n"] = c.n;
    e["status"] = c.failed ? "failed" : "ok";
    if (c.failed) {
      e["error"] = c.error;
    } else {
      e["mean_hat"] = c.mean_hat;
      e["var_hat"] = c.var_hat ? json(*c.var_hat) : json(nullptr);
      e["mean_tilde"] = c.mean_tilde;
      e["var_tilde"] = c.var_tilde ? json(*c.var_tilde) : json(nullptr);
      e["upsilon_true"] =
          c.upsilon_true ? json(*c.upsilon_true) : json(nullptr);
      e["r"] = c.r_used;
      e["reps"] = c.reps_completed;
      e["wall_time"] = c.wall_time;
    }
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  return j.dump(2);
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out = "dist_id,d,n,estimator,mean,variance,upsilon_true,r,reps,seed\n";
  const std::string seed = std::to_string(report.master_seed);
  for (const CellReport& c : report.cells) {
    if (c.failed) continue;
    const std::string truth =
        c.upsilon_true ? fmt_double(*c.upsilon_true) : std::string("NA");
    for (int which = 0; which < 2; ++which) {
      const bool hat = which == 0;
      const double mean = hat ? c.mean_hat : c.mean_tilde;
      const auto& var = hat ? c.var_hat : c.var_tilde;
      out += c.id;
      out += ',' + std::to_string(c.d);
      out += ',' + std::to_string(c.n);
      out += hat ? ",hat," : ",tilde,";
      out += fmt_double(mean);
      out += ',' + (var ? fmt_double(*var) : std::string("NA"));
      out += ',' + truth;
      out += ',' + fmt_double(c.r_used);
      out += ',' + std::to_string(c.reps_completed);
      out += ',' + seed;
      out += '\n';
    }
  }
  return out;
}

std::string estimate_to_json(const EstimateResult& est) {
  json j;
  j["n"] = est.n;
  j["d"] = est.d;
  j["r"] = est.r;
  j["upsilon_hat"] = est.upsilon_hat;
  j["upsilon_tilde"] = est.upsilon_tilde;
  j["a_count"] = est.a_count;
  return j.dump();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::int64_t line_no) {
  double v = 0.0;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), v);
  if (ec != std::errc{} || p != b + s.size())
    throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                ": bad number \"" + s + "\"");
  return v;
}

}  // namespace

SampleCloud read_cloud_csv(std::istream& in, int dim, bool header) {
  std::vector<double> data;
  std::string line;
  std::int64_t line_no = 0;
  std::int64_t rows = 0;
  int width = dim;
  if (header && std::getline(in, line)) ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    const std::vector<std::string> cols = split_csv(line);
    if (width == 0) width = static_cast<int>(cols.size());
    if (static_cast<int>(cols.size()) != width)
      throw std::invalid_argument(
          "csv line " + std::to_string(line_no) + ": expected " +
          std::to_string(width) + " columns, got " +
          std::to_string(cols.size()));
    for (const std::string& col : cols) data.push_back(parse_double(col, line_no));
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("csv: no data rows");
  return SampleCloud(std::move(data), rows, width);
}

void write_cloud_csv(std::ostream& out, const SampleCloud& cloud) {
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto p = cloud.point(i);
    for (int k = 0; k < cloud.d; ++k) {
      if (k > 0) out << ',';
      out << fmt_double(p[static_cast<std::size_t>(k)]);
    }
    out << '\n';
  }
}

std::vector<ReferenceRow> read_reference_csv(std::istream& in) {
  std::vector<ReferenceRow> rows;
  std::string line;
  std::int64_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    const std::vector<std::string> cols = split_csv(line);
    if (!saw_header) {
      if (cols != std::vector<std::string>{"dist_id", "d", "n", "estimator",
                                           "mean", "variance"})
        throw std::invalid_argument("reference csv: unexpected header");
      saw_header = true;
      continue;
    }
    if (cols.size() != 6)
      throw std::invalid_argument("reference csv line " +
                                  std::to_string(line_no) + ": expected 6 columns");
    ReferenceRow row;
    row.dist_id = cols[0];
    row.d = static_cast<int>(parse_double(cols[1], line_no));
    row.n = static_cast<std::int64_t>(parse_double(cols[2], line_no));
    row.estimator = cols[3];
    row.mean = parse_double(cols[4], line_no);
    row.variance = parse_double(cols[5], line_no);
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw std::invalid_argument("reference csv: empty file");
  return rows;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

}  // namespace standardness::io
