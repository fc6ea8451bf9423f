#include "standardness/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "standardness/estimator.hpp"

namespace standardness {

namespace {

constexpr double kPi = std::numbers::pi;

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void validate(const OracleConfig& cfg) {
  if (cfg.boundary_grid < 100)
    throw std::invalid_argument("oracle config: boundary_grid must be >= 100");
  if (cfg.interior_grid < 20)
    throw std::invalid_argument("oracle config: interior_grid must be >= 20");
  if (cfg.refine_iters < 0)
    throw std::invalid_argument("oracle config: refine_iters must be >= 0");
  if (cfg.mc_budget < 10'000)
    throw std::invalid_argument("oracle config: mc_budget must be >= 10000");
}

// Scores probes: exact ball mass for uniform laws, shared-sample empirical
// mass for the radial law (one fixed draw scored against every probe, so the
// probe minimum is not re-randomized per call).
struct ProbeEval {
  Shape sup{Ball{1, {0.0}, 1.0}};
  double r = 0.0;
  double norm = 1.0;  // omega_d * r^d
  double shape_area = 1.0;
  bool mc = false;
  SampleCloud mc_cloud;
  GridIndex mc_grid;

  double operator()(std::span<const double> x) const {
    if (!mc) return ball_shape_intersection(sup, x, r) / shape_area / norm;
    const auto hits = count_within(mc_cloud, mc_grid, x);
    return static_cast<double>(hits) / static_cast<double>(mc_cloud.n) / norm;
  }

  double std_error_at(double fraction) const {
    if (!mc) return 0.0;
    const double p = std::clamp(fraction * norm, 0.0, 1.0);
    return std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(mc_cloud.n))) / norm;
  }
};

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> point;

  void offer(double v, std::vector<double> x) {
    if (v < value || (v == value && (point.empty() || lex_less(x, point)))) {
      value = v;
      point = std::move(x);
    }
  }
};

// orthonormal tangent frame at unit direction u (d-1 vectors)
std::vector<std::vector<double>> tangent_frame(const std::vector<double>& u) {
  const int d = static_cast<int>(u.size());
  std::vector<std::vector<double>> frame;
  for (int axis = 0; axis < d && static_cast<int>(frame.size()) < d - 1; ++axis) {
    std::vector<double> v(d, 0.0);
    v[axis] = 1.0;
    double dp = 0.0;
    for (int k = 0; k < d; ++k) dp += v[k] * u[k];
    for (int k = 0; k < d; ++k) v[k] -= dp * u[k];
    for (const auto& t : frame) {
      double tp = 0.0;
      for (int k = 0; k < d; ++k) tp += v[k] * t[k];
      for (int k = 0; k < d; ++k) v[k] -= tp * t[k];
    }
    double nn = 0.0;
    for (int k = 0; k < d; ++k) nn += v[k] * v[k];
    if (nn < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(nn);
    for (int k = 0; k < d; ++k) v[k] *= inv;
    frame.push_back(std::move(v));
  }
  return frame;
}

constexpr double kGoldenRatio = 0.6180339887498949;

// golden-section narrowing of f over [a, b]; returns the best probed point
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, int steps) {
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < steps; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

MinBallResult min_ball_fraction(const Distribution& dist, double r, const OracleConfig& cfg) {
  validate(cfg);
  const Shape sup = support(dist);
  const int d = shape_dim(sup);
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("min_ball_fraction: radius must be positive");
  if (r >= diameter(sup))
    throw std::out_of_range("min_ball_fraction: radius must be below the support diameter");

  ProbeEval eval;
  eval.sup = sup;
  eval.r = r;
  eval.norm = unit_ball_volume(d) * pow_int(r, d);
  eval.shape_area = area(sup);
  if (std::holds_alternative<RadialCombination>(dist)) {
    eval.mc = true;
    // same dedicated stream as nu_ball's Monte Carlo path
    Stream stream = SeedSpec{kGolden}.stream(0, 0);
    eval.mc_cloud = sample(dist, cfg.mc_budget, stream);
    eval.mc_grid = GridIndex::build(eval.mc_cloud, r);
  }

  Best best;

  // boundary sweep
  const auto* poly = std::get_if<ConvexPolygon>(&sup);
  double perimeter = 0.0;
  if (poly) {
    perimeter = polygon_perimeter(*poly);
    for (const Vec2& v : poly->vertices) {
      const std::vector<double> x{v.x, v.y};
      best.offer(eval(x), x);
    }
    for (int i = 0; i < cfg.boundary_grid; ++i) {
      const Vec2 p = polygon_boundary_point(*poly, perimeter * i / cfg.boundary_grid);
      const std::vector<double> x{p.x, p.y};
      best.offer(eval(x), x);
    }
  } else {
    const Ball& b = std::get<Ball>(sup);
    if (d == 1) {
      for (const double s : {-1.0, 1.0}) {
        std::vector<double> x{b.center[0] + s * b.radius};
        best.offer(eval(x), x);
      }
    } else if (d == 2) {
      for (int i = 0; i < cfg.boundary_grid; ++i) {
        const double th = 2.0 * kPi * i / cfg.boundary_grid;
        std::vector<double> x{b.center[0] + b.radius * std::cos(th),
                              b.center[1] + b.radius * std::sin(th)};
        best.offer(eval(x), x);
      }
    } else {
      // axis poles plus a fixed seeded spray of directions
      for (int k = 0; k < d; ++k)
        for (const double s : {-1.0, 1.0}) {
          std::vector<double> x(b.center.begin(), b.center.end());
          x[k] += s * b.radius;
          best.offer(eval(x), x);
        }
      Stream dirs = SeedSpec{kGolden}.stream(2, 0);
      std::vector<double> g(d);
      for (int i = 0; i < cfg.boundary_grid; ++i) {
        double nn = 0.0;
        for (int k = 0; k < d; ++k) {
          g[k] = dirs.next_gaussian();
          nn += g[k] * g[k];
        }
        if (nn < 1e-280) continue;
        const double s = b.radius / std::sqrt(nn);
        std::vector<double> x(d);
        for (int k = 0; k < d; ++k) x[k] = b.center[k] + s * g[k];
        best.offer(eval(x), x);
      }
    }
  }

  // interior lattice over the bounding box, clipped to the support
  {
    std::vector<double> lo(d), hi(d);
    bounding_box(sup, lo, hi);
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    const int m = cfg.interior_grid;
    while (true) {
      for (int k = 0; k < d; ++k)
        x[k] = lo[k] + (hi[k] - lo[k]) * (idx[k] + 0.5) / m;
      if (contains(sup, x)) best.offer(eval(x), x);
      int k = d - 1;
      while (k >= 0 && idx[k] == m - 1) idx[k--] = 0;
      if (k < 0) break;
      ++idx[k];
    }
  }

  // local refinement rounds around the incumbent
  for (int round = 0; round < cfg.refine_iters; ++round) {
    const std::vector<double> anchor = best.point;
    if (poly) {
      // locate the boundary parameter closest to the anchor by re-probing the
      // sweep spacing window around it with golden-section narrowing
      double s_best = 0.0;
      double d_best = std::numeric_limits<double>::infinity();
      const int probes = cfg.boundary_grid;
      for (int i = 0; i < probes; ++i) {
        const Vec2 p = polygon_boundary_point(*poly, perimeter * i / probes);
        const double dx = p.x - anchor[0], dy = p.y - anchor[1];
        const double dd = dx * dx + dy * dy;
        if (dd < d_best) {
          d_best = dd;
          s_best = perimeter * i / probes;
        }
      }
      const double h = perimeter / cfg.boundary_grid / (1 << round);
      const auto [s_min, v_min] = golden_min(
          [&](double s) {
            const Vec2 p = polygon_boundary_point(*poly, s);
            const std::vector<double> x{p.x, p.y};
            return eval(x);
          },
          s_best - h, s_best + h, 12);
      const Vec2 p = polygon_boundary_point(*poly, s_min);
      best.offer(v_min, {p.x, p.y});
    } else {
      const Ball& b = std::get<Ball>(sup);
      double rho = 0.0;
      for (int k = 0; k < d; ++k) {
        const double t = anchor[k] - b.center[k];
        rho += t * t;
      }
      rho = std::sqrt(rho);
      if (rho > 0.5 * b.radius && d >= 2) {
        // tangential narrowing on the sphere around the anchor direction
        std::vector<double> u(d);
        for (int k = 0; k < d; ++k) u[k] = (anchor[k] - b.center[k]) / rho;
        const double w0 = (d == 2 ? 2.0 * kPi / cfg.boundary_grid : 0.2) / (1 << round);
        for (const auto& t : tangent_frame(u)) {
          const auto [phi, v] = golden_min(
              [&](double a) {
                std::vector<double> x(d);
                for (int k = 0; k < d; ++k)
                  x[k] = b.center[k] + b.radius * (std::cos(a) * u[k] + std::sin(a) * t[k]);
                return eval(x);
              },
              -w0, w0, 10);
          std::vector<double> x(d);
          for (int k = 0; k < d; ++k)
            x[k] = b.center[k] + b.radius * (std::cos(phi) * u[k] + std::sin(phi) * t[k]);
          best.offer(v, x);
        }
      }
    }
    // ambient lattice shrink (catches interior minima, e.g. an antimode)
    {
      std::vector<double> lo(d), hi(d);
      bounding_box(sup, lo, hi);
      double step = 0.0;
      for (int k = 0; k < d; ++k) step = std::max(step, (hi[k] - lo[k]) / cfg.interior_grid);
      step /= (1 << (round + 1));
      std::vector<int> idx(d, 0);
      std::vector<double> x(d);
      while (true) {
        for (int k = 0; k < d; ++k) x[k] = anchor[k] + step * (idx[k] - 2);
        if (contains(sup, x)) best.offer(eval(x), x);
        int k = d - 1;
        while (k >= 0 && idx[k] == 4) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
      }
    }
  }

  MinBallResult res;
  res.value = best.value;
  res.argmin = best.point;
  res.std_error = eval.std_error_at(best.value);
  return res;
}

double omega(const Distribution& dist, double r, double upsilon_true, const OracleConfig& cfg) {
  return std::abs(min_ball_fraction(dist, r, cfg).value - upsilon_true);
}

OmegaCurveResult omega_curve(const Distribution& dist, const std::vector<double>& radii,
                             double upsilon_true, const OracleConfig& cfg) {
  if (radii.empty()) throw std::invalid_argument("omega_curve: radii list is empty");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1]))
      throw std::invalid_argument("omega_curve: radii must be strictly decreasing");

  OmegaCurveResult out;
  std::vector<double> floors;
  for (const double r : radii) {
    const MinBallResult m = min_ball_fraction(dist, r, cfg);
    out.curve.radii.push_back(r);
    out.curve.values.push_back(m.value);
    out.curve.omega_values.push_back(std::abs(m.value - upsilon_true));
    out.curve.argmins.push_back(m.argmin);
    floors.push_back(m.std_error > 0.0 ? 3.0 * m.std_error : 1e-9);
  }

  // least-squares slope of log omega vs log r over points above the floor
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int used = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (out.curve.omega_values[i] <= floors[i]) continue;
    const double x = std::log(radii[i]);
    const double y = std::log(out.curve.omega_values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used >= 3) {
    const double denom = used * sxx - sx * sx;
    if (denom > 0.0) out.slope = (used * sxy - sx * sy) / denom;
  }
  return out;
}

}  // namespace standardness
