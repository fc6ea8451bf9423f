#include "standardness/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>

#include "standardness/geometry.hpp"

namespace standardness {

namespace {

double dist2(std::span<const double> a, std::span<const double> b, int d) {
  double acc = 0.0;
  for (int k = 0; k < d; ++k) {
    const double t = a[k] - b[k];
    acc += t * t;
  }
  return acc;
}

void cell_coords(const GridIndex& g, std::span<const double> p, std::int64_t* c) {
  for (int k = 0; k < g.dim; ++k) {
    auto v = static_cast<std::int64_t>(std::floor((p[k] - g.origin[k]) / g.cell_size));
    c[k] = std::clamp<std::int64_t>(v, 0, g.extents[k] - 1);
  }
}

// dense mode only; extents product is bounded there
std::int64_t linear_id(const GridIndex& g, const std::int64_t* c) {
  std::int64_t id = 0;
  for (int k = g.dim - 1; k >= 0; --k) id = id * g.extents[k] + c[k];
  return id;
}

bool tuple_less(const std::int64_t* a, const std::int64_t* b, int d) {
  for (int k = 0; k < d; ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

// [begin, end) into order for the cell at coords c; empty when unoccupied
std::pair<std::int64_t, std::int64_t> bucket(const GridIndex& g, const std::int64_t* c) {
  if (g.dense) {
    const std::int64_t id = linear_id(g, c);
    return {g.bucket_begin[id], g.bucket_begin[id + 1]};
  }
  const std::int64_t ncells = static_cast<std::int64_t>(g.cell_begin.size()) - 1;
  std::int64_t lo = 0, hi = ncells;
  while (lo < hi) {
    const std::int64_t mid = (lo + hi) / 2;
    if (tuple_less(g.cell_keys.data() + mid * g.dim, c, g.dim))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == ncells || tuple_less(c, g.cell_keys.data() + lo * g.dim, g.dim)) return {0, 0};
  return {g.cell_begin[lo], g.cell_begin[lo + 1]};
}

// all offsets in {-1,0,1}^d, lexicographic order; the second half (after the
// zero offset) is the forward set for symmetric pair sweeps
std::vector<std::int64_t> make_offsets(int d) {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> cur(d, -1);
  while (true) {
    out.insert(out.end(), cur.begin(), cur.end());
    int k = d - 1;
    while (k >= 0 && cur[k] == 1) cur[k--] = -1;
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

}  // namespace

GridIndex GridIndex::build(const SampleCloud& cloud, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("grid radius must be positive and finite");
  GridIndex g;
  g.cell_size = r;
  g.dim = cloud.d;
  g.origin.assign(cloud.d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(cloud.d, -std::numeric_limits<double>::infinity());
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto p = cloud.point(i);
    for (int k = 0; k < cloud.d; ++k) {
      g.origin[k] = std::min(g.origin[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  g.extents.resize(cloud.d);
  double total = 1.0;
  for (int k = 0; k < cloud.d; ++k) {
    const double span = hi[k] - g.origin[k];
    double e = std::floor(span / r) + 1.0;
    if (!(e >= 1.0)) e = 1.0;
    g.extents[k] = e < 9.0e18 ? static_cast<std::int64_t>(e)
                              : std::numeric_limits<std::int64_t>::max() / (2 * cloud.d);
    total *= e;
  }
  g.dense = total <= std::max<double>(1024.0, 4.0 * static_cast<double>(cloud.n));

  const int d = cloud.d;
  std::vector<std::int64_t> coords(static_cast<size_t>(cloud.n) * d);
  for (std::int64_t i = 0; i < cloud.n; ++i)
    cell_coords(g, cloud.point(i), coords.data() + i * d);

  if (g.dense) {
    const auto ncells = static_cast<std::int64_t>(total);
    g.bucket_begin.assign(ncells + 1, 0);
    std::vector<std::int64_t> ids(cloud.n);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      ids[i] = linear_id(g, coords.data() + i * d);
      ++g.bucket_begin[ids[i] + 1];
    }
    for (std::int64_t c = 0; c < ncells; ++c) g.bucket_begin[c + 1] += g.bucket_begin[c];
    g.order.resize(cloud.n);
    std::vector<std::int64_t> cursor(g.bucket_begin.begin(), g.bucket_begin.end() - 1);
    for (std::int64_t i = 0; i < cloud.n; ++i)
      g.order[cursor[ids[i]]++] = static_cast<std::int32_t>(i);
    return g;
  }

  // sparse: group points by sorted coordinate tuple; lookups binary-search
  // the tuples, so lattice width never overflows anything
  g.order.resize(cloud.n);
  for (std::int64_t i = 0; i < cloud.n; ++i) g.order[i] = static_cast<std::int32_t>(i);
  std::sort(g.order.begin(), g.order.end(), [&](std::int32_t a, std::int32_t b) {
    if (tuple_less(coords.data() + static_cast<std::int64_t>(a) * d,
                   coords.data() + static_cast<std::int64_t>(b) * d, d))
      return true;
    if (tuple_less(coords.data() + static_cast<std::int64_t>(b) * d,
                   coords.data() + static_cast<std::int64_t>(a) * d, d))
      return false;
    return a < b;
  });
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const std::int64_t* c = coords.data() + static_cast<std::int64_t>(g.order[i]) * d;
    const bool fresh =
        g.cell_begin.empty() ||
        tuple_less(g.cell_keys.data() + (g.cell_begin.size() - 1) * d, c, d);
    if (fresh) {
      g.cell_keys.insert(g.cell_keys.end(), c, c + d);
      g.cell_begin.push_back(i);
    }
  }
  g.cell_begin.push_back(cloud.n);
  return g;
}

namespace {

void count_symmetric(const SampleCloud& cloud, const GridIndex& g, double r,
                     std::vector<std::int32_t>& counts) {
  const double r2 = r * r;
  const int d = cloud.d;
  const auto offsets = make_offsets(d);
  const std::int64_t n_off = static_cast<std::int64_t>(offsets.size()) / d;
  const std::int64_t first_forward = n_off / 2 + 1;
  const std::int64_t ncells =
      g.dense ? static_cast<std::int64_t>(g.bucket_begin.size()) - 1
              : static_cast<std::int64_t>(g.cell_begin.size()) - 1;
  std::vector<std::int64_t> c(d), nb(d);
  for (std::int64_t cell = 0; cell < ncells; ++cell) {
    std::int64_t b0, b1;
    if (g.dense) {
      b0 = g.bucket_begin[cell];
      b1 = g.bucket_begin[cell + 1];
      if (b0 == b1) continue;
      std::int64_t rest = cell;
      for (int k = 0; k < d; ++k) {
        c[k] = rest % g.extents[k];
        rest /= g.extents[k];
      }
    } else {
      b0 = g.cell_begin[cell];
      b1 = g.cell_begin[cell + 1];
      for (int k = 0; k < d; ++k) c[k] = g.cell_keys[cell * d + k];
    }
    for (std::int64_t u = b0; u < b1; ++u) {
      const auto i = g.order[u];
      const auto pi = cloud.point(i);
      for (std::int64_t v = u + 1; v < b1; ++v) {
        const auto j = g.order[v];
        if (dist2(pi, cloud.point(j), d) <= r2) {
          ++counts[i];
          ++counts[j];
        }
      }
    }
    for (std::int64_t f = first_forward; f < n_off; ++f) {
      bool ok = true;
      for (int k = 0; k < d; ++k) {
        nb[k] = c[k] + offsets[f * d + k];
        if (nb[k] < 0 || nb[k] >= g.extents[k]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const auto [n0, n1] = bucket(g, nb.data());
      for (std::int64_t u = b0; u < b1; ++u) {
        const auto i = g.order[u];
        const auto pi = cloud.point(i);
        for (std::int64_t v = n0; v < n1; ++v) {
          const auto j = g.order[v];
          if (dist2(pi, cloud.point(j), d) <= r2) {
            ++counts[i];
            ++counts[j];
          }
        }
      }
    }
  }
}

void count_one_sided(const SampleCloud& cloud, const GridIndex& g, double r, int threads,
                     std::vector<std::int32_t>& counts) {
  const double r2 = r * r;
  const int d = cloud.d;
  const auto offsets = make_offsets(d);
  const std::int64_t n_off = static_cast<std::int64_t>(offsets.size()) / d;
  const auto work = [&](std::int64_t j0, std::int64_t j1) {
    std::vector<std::int64_t> c(d), nb(d);
    for (std::int64_t j = j0; j < j1; ++j) {
      const auto pj = cloud.point(j);
      cell_coords(g, pj, c.data());
      std::int32_t acc = 0;
      for (std::int64_t f = 0; f < n_off; ++f) {
        bool ok = true;
        for (int k = 0; k < d; ++k) {
          nb[k] = c[k] + offsets[f * d + k];
          if (nb[k] < 0 || nb[k] >= g.extents[k]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const auto [n0, n1] = bucket(g, nb.data());
        for (std::int64_t v = n0; v < n1; ++v)
          if (dist2(pj, cloud.point(g.order[v]), d) <= r2) ++acc;
      }
      counts[j] = acc;
    }
  };
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(cloud.n)));
  std::vector<std::thread> pool;
  const std::int64_t block = (cloud.n + t - 1) / t;
  for (int k = 0; k < t; ++k) {
    const std::int64_t j0 = k * block;
    const std::int64_t j1 = std::min<std::int64_t>(cloud.n, j0 + block);
    if (j0 >= j1) break;
    pool.emplace_back(work, j0, j1);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::int64_t count_within(const SampleCloud& cloud, const GridIndex& g,
                          std::span<const double> x) {
  const double r2 = g.cell_size * g.cell_size;
  const int d = g.dim;
  const auto offsets = make_offsets(d);
  const std::int64_t n_off = static_cast<std::int64_t>(offsets.size()) / d;
  std::vector<std::int64_t> c(d), nb(d);
  // clamped coords still see every in-range cell: a query more than one cell
  // outside the box has no in-radius points on that side anyway
  cell_coords(g, x, c.data());
  std::int64_t acc = 0;
  for (std::int64_t f = 0; f < n_off; ++f) {
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      nb[k] = c[k] + offsets[f * d + k];
      if (nb[k] < 0 || nb[k] >= g.extents[k]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const auto [n0, n1] = bucket(g, nb.data());
    for (std::int64_t v = n0; v < n1; ++v)
      if (dist2(x, cloud.point(g.order[v]), d) <= r2) ++acc;
  }
  return acc;
}

std::vector<std::int32_t> neighbor_counts(const SampleCloud& cloud, double r, int threads) {
  const GridIndex g = GridIndex::build(cloud, r);
  std::vector<std::int32_t> counts;
  if (threads > 1) {
    counts.assign(cloud.n, 0);
    count_one_sided(cloud, g, r, threads, counts);
  } else {
    counts.assign(cloud.n, 1);  // self
    count_symmetric(cloud, g, r, counts);
  }
  return counts;
}

std::vector<std::int32_t> naive_neighbor_counts(const SampleCloud& cloud, double r) {
  const double r2 = r * r;
  std::vector<std::int32_t> counts(cloud.n, 1);
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    const auto pi = cloud.point(i);
    for (std::int64_t j = i + 1; j < cloud.n; ++j)
      if (dist2(pi, cloud.point(j), cloud.d) <= r2) {
        ++counts[i];
        ++counts[j];
      }
  }
  return counts;
}

double default_radius(double n, int d) {
  if (!(n >= 2.0)) throw std::invalid_argument("default_radius: n must be >= 2");
  if (d < 1) throw std::invalid_argument("default_radius: dimension must be >= 1");
  return std::pow(std::log(n) / n, 1.0 / (2.0 * d));
}

EstimateResult estimate_from_counts(const std::vector<std::int32_t>& counts,
                                    std::int64_t n, int d, double r,
                                    double slack_scale) {
  if (n < 1 || counts.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("estimate_from_counts: counts size mismatch");
  const std::int32_t min_count = *std::min_element(counts.begin(), counts.end());
  const double denom = static_cast<double>(n) * unit_ball_volume(d) * pow_int(r, d);
  const double hat = static_cast<double>(min_count) / denom;
  // membership test cleared of the common 1/(n omega_d r^d) factor:
  // counts[i] <= min_count * (1 + slack). r^{d/2} as sqrt(r^d) stays exact
  // under power-of-two rescaling of r.
  const double slack = slack_scale * unit_ball_volume(d) * std::sqrt(pow_int(r, d));
  const double threshold = static_cast<double>(min_count) * (1.0 + slack);
  std::int64_t a = 0;
  for (const std::int32_t c : counts)
    if (static_cast<double>(c) <= threshold) ++a;
  EstimateResult res;
  res.n = n;
  res.d = d;
  res.r = r;
  res.min_count = min_count;
  res.a_count = a;
  res.upsilon_hat = hat;
  res.upsilon_tilde = hat * (1.0 + static_cast<double>(a) / static_cast<double>(n));
  return res;
}

double plugin_estimate(const SampleCloud& cloud, double r, int threads) {
  const auto counts = neighbor_counts(cloud, r, threads);
  const std::int32_t min_count = *std::min_element(counts.begin(), counts.end());
  const double denom =
      static_cast<double>(cloud.n) * unit_ball_volume(cloud.d) * pow_int(r, cloud.d);
  return static_cast<double>(min_count) / denom;
}

EstimateResult bias_corrected_estimate(const SampleCloud& cloud, double r, int threads,
                                       double slack_scale) {
  const auto counts = neighbor_counts(cloud, r, threads);
  return estimate_from_counts(counts, cloud.n, cloud.d, r, slack_scale);
}

}  // namespace standardness
