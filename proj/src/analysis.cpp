#include "navsim/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "navsim/errors.hpp"
#include "navsim/potential.hpp"

namespace navsim {
namespace {

constexpr int kNewtonIterations = 100;
constexpr double kNewtonTolerance = 1e-12;
constexpr double kAcceptTolerance = 1e-10;
constexpr double kDedupRadius = 1e-6;
constexpr double kClassifyRelTol = 1e-9;

double hessian_scale(const Vec2& h, const PointWorld& pw, int k) {
  double s = 2.0 / norm_sq(h - pw.destination_point);
  for (const Vec2& p : pw.obstacle_points) s += 2.0 / (k * norm_sq(h - p));
  return s;
}

double min_pole_distance(const Vec2& h, const PointWorld& pw) {
  double d = norm(h - pw.destination_point);
  for (const Vec2& p : pw.obstacle_points) d = std::min(d, norm(h - p));
  return d;
}

// Plain Nelder-Mead on R^n.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_evals) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> fx(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i, ++evals) fx[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (fx[worst] - fx[best] <= 1e-30 * (1.0 + std::abs(fx[best]))) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j] / static_cast<double>(n);
    const auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return p;
    };

    const auto xr = along(-1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < fx[best]) {
      const auto xe = along(-2.0);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        simplex[worst] = xe;
        fx[worst] = fe;
      } else {
        simplex[worst] = xr;
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      simplex[worst] = xr;
      fx[worst] = fr;
    } else {
      const auto xc = fr < fx[worst] ? along(-0.5) : along(0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fx[worst])) {
        simplex[worst] = xc;
        fx[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fx[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  const auto it = std::min_element(fx.begin(), fx.end());
  return simplex[static_cast<std::size_t>(it - fx.begin())];
}

// Solves the small dense system A x = b in place (partial pivoting).
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= m * a[c][j];
      b[r] -= m * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t j = c + 1; j < n; ++j) b[c] -= a[c][j] * b[j];
    b[c] /= a[c][c];
  }
  return true;
}

// Mirror-symmetric arrangement: h = 0, P_d = (-1, 0), obstacle 1 at -r1 on
// the axis, pair j at -r_j (cos a_j, +-sin a_j).
struct Arrangement {
  int k;
  int pairs;
  std::optional<double> fixed_angle;

  std::size_t dims() const { return static_cast<std::size_t>(1 + pairs + (fixed_angle ? 0 : pairs)); }

  PointWorld world(const std::vector<double>& p) const {
    PointWorld pw;
    pw.destination_point = {-1.0, 0.0};
    pw.obstacle_points.push_back({-std::exp(p[0]), 0.0});
    for (int j = 0; j < pairs; ++j) {
      const double r = std::exp(p[1 + j]);
      const double a = fixed_angle ? *fixed_angle : p[1 + pairs + j];
      pw.obstacle_points.push_back({-r * std::cos(a), -r * std::sin(a)});
    }
    for (int j = 0; j < pairs; ++j) {
      const double r = std::exp(p[1 + j]);
      const double a = fixed_angle ? *fixed_angle : p[1 + pairs + j];
      pw.obstacle_points.push_back({-r * std::cos(a), r * std::sin(a)});
    }
    return pw;
  }

  // (grad_x, grad_y, lambda) at the origin.
  std::array<double, 3> residuals(const std::vector<double>& p) const {
    const PointWorld pw = world(p);
    const Vec2 h{0.0, 0.0};
    if (min_pole_distance(h, pw) < 1e-6) return {1e6, 1e6, 1e6};
    const Vec2 g = grad_phi_k(h, pw, k);
    const double lam = degeneracy_scalar(h, pw, k).lambda_scalar;
    return {g.x, g.y, lam};
  }
};

double sum_sq(const std::array<double, 3>& r) { return r[0] * r[0] + r[1] * r[1] + r[2] * r[2]; }

// Minimum-norm Gauss-Newton polish with a central-difference Jacobian.
std::vector<double> polish(const Arrangement& arr, std::vector<double> p) {
  const std::size_t n = p.size();
  for (int it = 0; it < 50; ++it) {
    const auto r = arr.residuals(p);
    if (std::sqrt(sum_sq(r)) < 1e-15) break;
    std::vector<std::array<double, 3>> jac(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double step = 1e-7 * std::max(1.0, std::abs(p[j]));
      auto pp = p, pm = p;
      pp[j] += step;
      pm[j] -= step;
      const auto rp = arr.residuals(pp), rm = arr.residuals(pm);
      for (int i = 0; i < 3; ++i) jac[j][static_cast<std::size_t>(i)] = (rp[static_cast<std::size_t>(i)] - rm[static_cast<std::size_t>(i)]) / (2.0 * step);
    }
    // delta = -J^T (J J^T + eps I)^-1 r
    std::vector<std::vector<double>> jjt(3, std::vector<double>(3, 0.0));
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t j = 0; j < n; ++j) jjt[a][b] += jac[j][a] * jac[j][b];
    double tr = jjt[0][0] + jjt[1][1] + jjt[2][2];
    for (std::size_t a = 0; a < 3; ++a) jjt[a][a] += 1e-14 * tr + 1e-300;
    std::vector<double> y{r[0], r[1], r[2]};
    if (!solve_dense(jjt, y)) break;
    std::vector<double> delta(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < 3; ++a) delta[j] -= jac[j][a] * y[a];

    double t = 1.0;
    const double f0 = sum_sq(r);
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      auto cand = p;
      for (std::size_t j = 0; j < n; ++j) cand[j] += t * delta[j];
      if (sum_sq(arr.residuals(cand)) < f0) {
        p = cand;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return p;
}

}  // namespace

std::string_view to_string(CriticalClass c) {
  switch (c) {
    case CriticalClass::saddle: return "saddle";
    case CriticalClass::degenerate: return "degenerate";
    case CriticalClass::destination_minimum: return "destination_minimum";
    case CriticalClass::needs_review: return "needs_review";
  }
  return "needs_review";
}

std::optional<Vec2> refine_critical_point(const PointWorld& pw, int k, Vec2 h) {
  const double far = 1e6 * (1.0 + norm(pw.destination_point));
  try {
    Vec2 g = grad_phi_k(h, pw, k);
    for (int it = 0; it < kNewtonIterations && norm(g) >= kNewtonTolerance; ++it) {
      const Mat2 H = hess_phi_k(h, pw, k);
      const double det = H.det();
      if (det == 0.0 || !std::isfinite(det)) break;
      const Vec2 step{-(H.yy * g.x - H.xy * g.y) / det, -(-H.yx * g.x + H.xx * g.y) / det};
      double t = 1.0;
      bool moved = false;
      for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
        const Vec2 cand = h + step * t;
        if (min_pole_distance(cand, pw) < 1e3 * kPoleGuard) continue;
        const Vec2 gc = grad_phi_k(cand, pw, k);
        if (norm(gc) < norm(g)) {
          h = cand;
          g = gc;
          moved = true;
          break;
        }
      }
      if (!moved || norm(h) > far) break;
    }
    if (norm(g) < kAcceptTolerance) return h;
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

CriticalPoint make_critical_point(const PointWorld& pw, int k, const Vec2& h) {
  CriticalPoint cp;
  cp.location = h;
  cp.gradient_norm = norm(grad_phi_k(h, pw, k));
  cp.hessian = hess_phi_k(h, pw, k);
  cp.eigenvalues = symmetric_eigenvalues(cp.hessian);
  cp.scale = hessian_scale(h, pw, k);
  cp.classification = classify(cp);
  return cp;
}

CriticalClass classify(const CriticalPoint& cp) {
  const double tol = kClassifyRelTol * cp.scale;
  const auto [lo, hi] = cp.eigenvalues;
  if (cp.hessian.frobenius() < tol) return CriticalClass::degenerate;
  if (lo < -tol && hi > tol) return CriticalClass::saddle;
  if (lo > tol) return CriticalClass::destination_minimum;
  return CriticalClass::needs_review;
}

std::vector<CriticalPoint> find_critical_points(const PointWorld& pw, int k, int grid_n) {
  if (grid_n < 16) throw std::invalid_argument("find_critical_points: grid_n must be at least 16");
  Vec2 lo = pw.destination_point, hi = pw.destination_point;
  for (const Vec2& p : pw.obstacle_points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const Vec2 mid = (lo + hi) * 0.5;
  double half = std::max(hi.x - lo.x, hi.y - lo.y);  // 2x inflation of the half extent
  if (half == 0.0) half = std::max(1.0, norm(mid));

  std::vector<Vec2> found;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Vec2 seed{mid.x - half + (2.0 * half) * (i + 0.5) / grid_n, mid.y - half + (2.0 * half) * (j + 0.5) / grid_n};
      if (min_pole_distance(seed, pw) < 1e3 * kPoleGuard) continue;
      const auto c = refine_critical_point(pw, k, seed);
      if (!c) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Vec2& f) { return norm(f - *c) < kDedupRadius; });
      if (!dup) found.push_back(*c);
    }
  }
  std::sort(found.begin(), found.end(), [](const Vec2& a, const Vec2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::vector<CriticalPoint> out;
  out.reserve(found.size());
  for (const Vec2& h : found) out.push_back(make_critical_point(pw, k, h));
  return out;
}

DegeneracyReport degeneracy_scalar(const Vec2& h, const PointWorld& pw, int k) {
  DegeneracyReport rep;
  rep.test_point = h;
  rep.hessian_frobenius = hess_phi_k(h, pw, k).frobenius();  // also guards the poles
  const Vec2 hd = h - pw.destination_point;
  const Vec2 dir_d = normalized(hd);
  double lam = k / norm_sq(hd);
  for (const Vec2& p : pw.obstacle_points) {
    const Vec2 hi = h - p;
    const Vec2 dir_i = normalized(hi);
    const double c = dot(dir_d, dir_i);
    const double s = dot(dir_d, perp(dir_i));
    rep.cosines.push_back(c);
    rep.sines.push_back(s);
    rep.angles.push_back(std::atan2(s, c));
    lam += (s * s - c * c) / norm_sq(hi);
  }
  rep.lambda_scalar = lam;
  return rep;
}

DegenerateSearchResult degenerate_search(int k, int mu_count, const DegenerateSearchOptions& opts) {
  if (mu_count < 1) throw std::invalid_argument("degenerate_search: mu_count must be at least 1");
  if (k < 1) throw std::invalid_argument("degenerate_search: k must be positive");
  const Arrangement arr{k, mu_count, opts.pair_angle};
  const auto objective = [&](const std::vector<double>& p) { return sum_sq(arr.residuals(p)); };

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> log_r(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> angle(0.1, std::numbers::pi - 0.1);

  std::vector<double> best;
  double best_f = std::numeric_limits<double>::infinity();
  const int per_start = std::max(100, opts.max_evaluations / std::max(1, opts.restarts));
  for (int start = 0; start < std::max(1, opts.restarts); ++start) {
    std::vector<double> p(arr.dims());
    for (int j = 0; j <= mu_count; ++j) p[static_cast<std::size_t>(j)] = log_r(rng);
    for (std::size_t j = static_cast<std::size_t>(1 + mu_count); j < p.size(); ++j) p[j] = angle(rng);
    p = polish(arr, nelder_mead(objective, p, 0.3, per_start));
    const double f = objective(p);
    if (f < best_f) {
      best_f = f;
      best = p;
    }
    if (std::sqrt(best_f) < 1e-13) break;
  }

  DegenerateSearchResult res;
  res.point_world = arr.world(best);
  res.test_point = {0.0, 0.0};
  const auto r = arr.residuals(best);
  res.gradient_norm = std::hypot(r[0], r[1]);
  res.best_residual = std::sqrt(sum_sq(r));
  res.report = degeneracy_scalar(res.test_point, res.point_world, k);
  res.found = res.gradient_norm < 1e-8 && std::abs(res.report.lambda_scalar) < 1e-8;

  const auto& pts = res.point_world.obstacle_points;
  const double hd = norm(res.test_point - res.point_world.destination_point);
  res.axis_condition_residual = 1.0 / (hd * hd) - 1.0 / (k * norm_sq(res.test_point - pts[0]));
  double sum = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) sum += 1.0 / (std::sqrt(2.0) * norm(res.test_point - pts[i]));
  res.projection_formula_residual = (2.0 / k) * (2.0 * std::sqrt(static_cast<double>(k)) - sum);
  return res;
}

namespace {

struct RayFrame {
  Vec2 centroid;
  double radius;
};

RayFrame ray_frame(const PointWorld& pw) {
  std::vector<Vec2> pts = pw.obstacle_points;
  pts.push_back(pw.destination_point);
  Vec2 c;
  for (const Vec2& p : pts) c += p;
  c = c / static_cast<double>(pts.size());
  double diam = 0.0;
  for (const Vec2& a : pts)
    for (const Vec2& b : pts) diam = std::max(diam, norm(a - b));
  return {c, 10.0 * (diam > 0.0 ? diam : 1.0)};
}

Vec2 ray(int j) {
  const double a = 2.0 * std::numbers::pi * j / 16.0 + 0.1;
  return {std::cos(a), std::sin(a)};
}

}  // namespace

bool attractivity_check(const PointWorld& pw, int k) {
  const RayFrame f = ray_frame(pw);
  for (int j = 0; j < 16; ++j) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int e = 0; e <= 10; ++e) {
      const double v = phi_k(f.centroid + ray(j) * (f.radius * std::ldexp(1.0, e)), pw, k);
      if (!(v > prev)) return false;
      prev = v;
    }
  }
  return true;
}

double growth_exponent(const PointWorld& pw, int k) {
  const RayFrame f = ray_frame(pw);
  const double r1 = f.radius * 1e3, r2 = f.radius * 1e4;
  double sum = 0.0;
  for (int j = 0; j < 16; ++j) {
    const double d = phi_k(f.centroid + ray(j) * r2, pw, k) - phi_k(f.centroid + ray(j) * r1, pw, k);
    sum += k * d / std::log(r2 / r1);
  }
  return sum / 16.0;
}

BasinStatistics basin_statistics(const Scenario& scenario, int n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw std::invalid_argument("basin_statistics: n_trials must be positive");
  std::mt19937_64 rng(seed);
  const double R = scenario.workspace.outer_radius;
  std::uniform_real_distribution<double> coord(-R, R);
  BasinStatistics stats;
  for (int t = 0; t < n_trials; ++t) {
    Vec2 p;
    do {
      p = {coord(rng), coord(rng)};
    } while (clearance(scenario.workspace, p) < kBasinStartClearance);
    Scenario sc = scenario;
    sc.robot = RobotModel::kinematic;
    sc.start = p;
    const Trajectory tr = simulate_kinematic(sc, sc.sim);
    ++stats.trials;
    switch (tr.outcome) {
      case Outcome::arrived: ++stats.arrived; break;
      case Outcome::saddle_stall: ++stats.saddle_stall; break;
      case Outcome::collision: ++stats.collision; break;
      case Outcome::timeout: ++stats.timeout; break;
    }
  }
  return stats;
}

}  // namespace navsim
