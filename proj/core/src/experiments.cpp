#include "standardness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "standardness/estimator.hpp"
#include "standardness/oracle.hpp"

namespace standardness {

namespace {

// Fixed-shape reduction so the aggregate is bit-identical no matter which
// thread produced each replication.
double pairwise_sum(const double* v, std::size_t k) {
  if (k <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += v[i];
    return s;
  }
  const std::size_t h = k / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, k - h);
}

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

double unbiased_variance(const std::vector<double>& v, double mean) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double e = v[i] - mean;
    sq[i] = e * e;
  }
  return pairwise_sum(sq.data(), sq.size()) /
         static_cast<double>(v.size() - 1);
}

int resolve_parallelism(int parallelism, int replications) {
  int t = parallelism;
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  return std::min(t, replications);
}

}  // namespace

CellReport run_cell(const CellSpec& cell, std::size_t cell_index,
                    std::uint64_t master_seed, int parallelism) {
  if (cell.replications < 1)
    throw std::invalid_argument("run_cell: replications must be >= 1");
  if (cell.radius_rule == RadiusRule::Default && cell.n < 2)
    throw std::invalid_argument(
        "run_cell: default radius rule needs n >= 2");
  if (cell.radius_rule == RadiusRule::Fixed &&
      !(cell.fixed_radius > 0.0 && std::isfinite(cell.fixed_radius)))
    throw std::invalid_argument("run_cell: fixed radius must be positive");

  const int d = shape_dim(support(cell.dist));
  const int reps = cell.replications;
  const double r = cell.radius_rule == RadiusRule::Default
                       ? default_radius(static_cast<double>(cell.n), d)
                       : cell.fixed_radius;

  CellReport report;
  report.id = cell.id;
  report.d = d;
  report.n = cell.n;
  report.r_used = r;

  std::vector<double> hat(reps), tilde(reps);
  std::vector<std::string> rep_error(reps);
  std::atomic<int> next{0};
  std::atomic<bool> abort{false};

  const auto t0 = std::chrono::steady_clock::now();
  auto worker = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const int k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= reps) return;
      try {
        SeedSpec seeds{master_seed};
        Stream stream = seeds.stream(static_cast<std::uint64_t>(cell_index),
                                     static_cast<std::uint64_t>(k));
        const SampleCloud cloud = sample(cell.dist, cell.n, stream);
        const EstimateResult est = bias_corrected_estimate(cloud, r);
        hat[static_cast<std::size_t>(k)] = est.upsilon_hat;
        tilde[static_cast<std::size_t>(k)] = est.upsilon_tilde;
      } catch (const std::exception& e) {
        rep_error[static_cast<std::size_t>(k)] = e.what();
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int threads = resolve_parallelism(parallelism, reps);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_time = std::chrono::duration<double>(t1 - t0).count();

  for (int k = 0; k < reps; ++k) {
    if (!rep_error[static_cast<std::size_t>(k)].empty()) {
      report.failed = true;
      report.error = "replication " + std::to_string(k) + ": " +
                     rep_error[static_cast<std::size_t>(k)];
      report.reps_completed = 0;
      return report;
    }
  }
  if (abort.load()) {  // abort without a recorded message cannot happen
    report.failed = true;
    report.error = "replication failed";
    return report;
  }

  report.reps_completed = reps;
  report.mean_hat = mean_of(hat);
  report.mean_tilde = mean_of(tilde);
  if (reps > 1) {
    report.var_hat = unbiased_variance(hat, report.mean_hat);
    report.var_tilde = unbiased_variance(tilde, report.mean_tilde);
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  ExperimentReport report;
  report.master_seed = spec.master_seed;
  report.cells.reserve(spec.cells.size());
  for (std::size_t i = 0; i < spec.cells.size(); ++i) {
    const CellSpec& cell = spec.cells[i];
    CellReport entry;
    try {
      entry = run_cell(cell, i, spec.master_seed, spec.parallelism);
    } catch (const std::exception& e) {
      entry.id = cell.id;
      entry.n = cell.n;
      entry.failed = true;
      entry.error = e.what();
      report.cells.push_back(std::move(entry));
      continue;
    }
    if (!entry.failed) {
      if (auto exact = analytic_upsilon(cell.dist)) {
        entry.upsilon_true = *exact;
      } else {
        try {
          entry.upsilon_true = min_ball_fraction(cell.dist, 1e-3).value;
        } catch (const std::exception&) {
          // leave unknown
        }
      }
    }
    report.cells.push_back(std::move(entry));
  }
  return report;
}

ComparisonResult compare_to_reference(const ExperimentReport& report,
                                      const std::vector<ReferenceRow>& reference,
                                      std::optional<double> tolerance,
                                      double tolerance_scale) {
  ComparisonResult result;
  result.pass = true;
  for (const ReferenceRow& row : reference) {
    const CellReport* cell = nullptr;
    for (const CellReport& c : report.cells) {
      if (c.id == row.dist_id && c.n == row.n) {
        cell = &c;
        break;
      }
    }
    if (cell == nullptr)
      throw std::invalid_argument("compare_to_reference: no cell matches " +
                                  row.dist_id + " n=" + std::to_string(row.n));
    if (row.estimator != "hat" && row.estimator != "tilde")
      throw std::invalid_argument("compare_to_reference: unknown estimator " +
                                  row.estimator);

    Verdict v;
    v.dist_id = row.dist_id;
    v.n = row.n;
    v.estimator = row.estimator;
    v.expected = row.mean;
    v.tolerance = tolerance ? *tolerance
                            : (row.d == 2 ? 0.006 : 0.01) * tolerance_scale;
    if (cell->failed) {
      v.got = std::numeric_limits<double>::quiet_NaN();
      v.pass = false;
    } else {
      v.got = row.estimator == "hat" ? cell->mean_hat : cell->mean_tilde;
      v.pass = std::abs(v.got - v.expected) <= v.tolerance;
    }
    result.pass = result.pass && v.pass;
    result.verdicts.push_back(std::move(v));
  }
  return result;
}

namespace {

const std::vector<std::int64_t>& table_sizes() {
  static const std::vector<std::int64_t> sizes{1000, 3000, 5000, 7000, 9000};
  return sizes;
}

Distribution dist_by_id(const std::string& id) {
  if (id == "triangle") return UniformOnShape{make_regular_polygon(3, 1.0)};
  if (id == "square") return UniformOnShape{make_regular_polygon(4, 1.0)};
  if (id == "hexagon") return UniformOnShape{make_regular_polygon(6, 1.0)};
  const double pi = std::acos(-1.0);
  if (id == "disk")
    return UniformOnShape{Ball(2, {0.0, 0.0}, 1.0 / std::sqrt(pi))};
  if (id == "ball3")
    return UniformOnShape{
        Ball(3, {0.0, 0.0, 0.0}, std::cbrt(3.0 / (4.0 * pi)))};
  if (id == "ball4")
    return UniformOnShape{Ball(
        4, {0.0, 0.0, 0.0, 0.0}, std::pow(2.0 / (pi * pi), 0.25))};
  if (id == "radial") return RadialCombination{};
  throw std::invalid_argument("unknown distribution id: " + id);
}

}  // namespace

ExperimentSpec table_spec(int table, int replications,
                          std::uint64_t master_seed) {
  std::vector<std::string> ids;
  switch (table) {
    case 1:
      ids = {"triangle", "square", "hexagon", "disk"};
      break;
    case 2:
      ids = {"ball3", "ball4"};
      break;
    case 3:
      ids = {"radial"};
      break;
    default:
      throw std::invalid_argument("table_spec: table must be 1, 2 or 3");
  }
  ExperimentSpec spec;
  spec.master_seed = master_seed;
  for (const std::string& id : ids) {
    for (std::int64_t n : table_sizes()) {
      CellSpec cell;
      cell.id = id;
      cell.dist = dist_by_id(id);
      cell.n = n;
      cell.replications = replications;
      spec.cells.push_back(std::move(cell));
    }
  }
  return spec;
}

}  // namespace standardness
