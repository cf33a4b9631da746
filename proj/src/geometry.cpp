#include "navsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "navsim/errors.hpp"

namespace navsim {
namespace {

// Relative slack for boundary-inclusive membership tests.
constexpr double kBoundarySlack = 1e-12;

}  // namespace

double Workspace::rho_min() const {
  if (rho_min_override) return *rho_min_override;
  double r = std::numeric_limits<double>::infinity();
  for (const auto& o : obstacles) r = std::min(r, o.radius);
  return r;
}

std::size_t Workspace::known_count() const {
  return static_cast<std::size_t>(
      std::count_if(obstacles.begin(), obstacles.end(), [](const DiskObstacle& o) { return o.known; }));
}

void validate(const Workspace& ws) {
  if (!(ws.outer_radius > 0.0) || !std::isfinite(ws.outer_radius))
    throw ScenarioError("outer_radius must be positive and finite");
  if (ws.rho_min_override && !(*ws.rho_min_override > 0.0))
    throw ScenarioError("rho_min override must be positive");
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i) {
    const auto& o = ws.obstacles[i];
    const std::string tag = "obstacle " + std::to_string(i);
    if (!is_finite(o.center) || !(o.radius > 0.0) || !std::isfinite(o.radius))
      throw ScenarioError(tag + ": radius must be positive and center finite");
    if (norm(o.center) + o.radius >= ws.outer_radius)
      throw ScenarioError(tag + " touches or crosses the outer boundary");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& p = ws.obstacles[j];
      if (norm(o.center - p.center) <= o.radius + p.radius)
        throw ScenarioError("obstacles " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
    }
  }
  if (!is_finite(ws.destination) || norm(ws.destination) >= ws.outer_radius)
    throw ScenarioError("destination must lie strictly inside the outer boundary");
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i) {
    const auto& o = ws.obstacles[i];
    if (norm(ws.destination - o.center) <= o.radius)
      throw ScenarioError("destination lies inside obstacle " + std::to_string(i));
  }
}

bool sector_contains_point(const SensingSector& s, const Vec2& p) {
  const Vec2 d = p - s.pole;
  const double r = norm(d);
  if (r == 0.0) return true;
  if (r > s.range * (1.0 + kBoundarySlack)) return false;
  if (s.aperture >= 2.0 * std::numbers::pi) return true;
  const double angle = std::abs(std::atan2(cross(s.axis, d), dot(s.axis, d)));
  return angle <= 0.5 * s.aperture * (1.0 + kBoundarySlack);
}

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

bool sector_detects_disk(const SensingSector& s, const DiskObstacle& disk) {
  const Vec2 d = disk.center - s.pole;
  const double dist = norm(d);
  const double tol = kBoundarySlack * std::max({1.0, s.range, disk.radius});
  if (dist <= disk.radius + tol) return true;
  if (dist > s.range + disk.radius + tol) return false;
  if (s.aperture >= 2.0 * std::numbers::pi) return true;

  const double half = 0.5 * s.aperture;
  const double angle = std::abs(std::atan2(cross(s.axis, d), dot(s.axis, d)));
  // Center inside the angular span: the ray towards the center reaches the disk.
  if (angle <= half) return true;

  // Otherwise the disk must cross one of the straight edges; the nearest arc
  // point is then an arc endpoint, which lies on an edge.
  const double c = std::cos(half), sn = std::sin(half);
  const Vec2 left{s.axis.x * c - s.axis.y * sn, s.axis.x * sn + s.axis.y * c};
  const Vec2 right{s.axis.x * c + s.axis.y * sn, -s.axis.x * sn + s.axis.y * c};
  return distance_to_segment(disk.center, s.pole, s.pole + left * s.range) <= disk.radius + tol ||
         distance_to_segment(disk.center, s.pole, s.pole + right * s.range) <= disk.radius + tol;
}

double min_detection_distance(double range, double aperture, double rho_min) {
  if (!(range > 0.0) || !(aperture > 0.0) || !(rho_min > 0.0) || aperture > 2.0 * std::numbers::pi)
    throw std::invalid_argument("min_detection_distance: range, aperture and rho_min must be positive, aperture <= 2*pi");
  if (aperture >= std::numbers::pi) return range;
  const double half = 0.5 * aperture;
  return std::min(range * std::sin(half), rho_min / std::cos(half));
}

double clearance(const Workspace& ws, const Vec2& p) {
  double c = ws.outer_radius - norm(p);
  for (const auto& o : ws.obstacles) c = std::min(c, norm(p - o.center) - o.radius);
  return c;
}

}  // namespace navsim
