#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "navsim/navtrans.hpp"
#include "navsim/sim.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

enum class CriticalClass { saddle, degenerate, destination_minimum, needs_review };

std::string_view to_string(CriticalClass c);

struct CriticalPoint {
  Vec2 location;
  double gradient_norm{0.0};
  Mat2 hessian;
  std::pair<double, double> eigenvalues;  // ascending
  double scale{1.0};  // sum of the magnitudes of the superposed term Hessians
  CriticalClass classification{CriticalClass::needs_review};
};

/// Damped Newton refinement of a zero of grad phi_k: step halving on
/// residual increase, at most 100 iterations, stops at |grad| < 1e-12.
/// Returns nothing when the iteration fails or approaches a pole.
std::optional<Vec2> refine_critical_point(const PointWorld& pw, int k, Vec2 seed);

/// Newton from grid_n x grid_n seeds over the point-world bounding box
/// inflated 2x. Points are deduplicated at 1e-6 and sorted by location.
/// The search is heuristic: a critical point far outside the box can be missed.
std::vector<CriticalPoint> find_critical_points(const PointWorld& pw, int k, int grid_n);

/// Builds the CriticalPoint record at h (no refinement).
CriticalPoint make_critical_point(const PointWorld& pw, int k, const Vec2& h);

/// Saddle when the eigenvalues have opposite signs beyond 1e-9 * scale,
/// degenerate when the Hessian norm is below 1e-9 * scale.
CriticalClass classify(const CriticalPoint& cp);

/// Sign of the Hessian along h_d: lambda of
///   hd^T H hd = -(2/k) lambda,  lambda = k/|hd|^2 - sum c^2/|hi|^2 + sum s^2/|hi|^2.
struct DegeneracyReport {
  Vec2 test_point;
  double lambda_scalar{0.0};
  std::vector<double> cosines;
  std::vector<double> sines;
  std::vector<double> angles;
  double hessian_frobenius{0.0};
};

DegeneracyReport degeneracy_scalar(const Vec2& h, const PointWorld& pw, int k);

struct DegenerateSearchOptions {
  /// Fixed half-angle of the mirrored obstacle pairs, measured from h_d.
  /// Unset: the half-angle of every pair is a free search variable.
  std::optional<double> pair_angle;
  int restarts{8};
  int max_evaluations{20000};
};

struct DegenerateSearchResult {
  bool found{false};
  PointWorld point_world;
  Vec2 test_point;
  DegeneracyReport report;
  double gradient_norm{0.0};
  double best_residual{0.0};  // sqrt(|grad|^2 + lambda^2)
  /// 1/|hd|^2 - 1/(k |h1|^2) for the returned arrangement.
  double axis_condition_residual{0.0};
  /// (2/k)(2 sqrt(k) - sum_{i>=2} 1/(sqrt(2)|hi|)) for the returned arrangement.
  double projection_formula_residual{0.0};
};

/// Searches the mirror-symmetric family: h at the origin, |hd| = 1, one
/// obstacle on the h_d axis and mu_count mirrored pairs, for a point where
/// both grad phi_k and lambda vanish.
DegenerateSearchResult degenerate_search(int k, int mu_count, const DegenerateSearchOptions& opts = {});

/// phi_k strictly increases along 16 rays at radii R 2^j, j = 0..10, with R
/// ten times the point-world diameter, measured from the centroid.
bool attractivity_check(const PointWorld& pw, int k);

/// Numerical exponent e with k phi_k(h) ~ ln |h|^e far from the point world;
/// e = 2(k - M) in exact arithmetic.
double growth_exponent(const PointWorld& pw, int k);

struct BasinStatistics {
  int trials{0};
  int arrived{0};
  int saddle_stall{0};
  int collision{0};
  int timeout{0};
  double fraction_converged() const { return trials > 0 ? static_cast<double>(arrived) / trials : 0.0; }
};

/// Runs the kinematic simulator from n_trials uniform random starts with
/// clearance above kBasinStartClearance.
BasinStatistics basin_statistics(const Scenario& scenario, int n_trials, std::uint64_t seed);

inline constexpr double kBasinStartClearance = 0.02;

}  // namespace navsim
