#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "navsim/vec2.hpp"

namespace navsim {

struct DiskObstacle {
  Vec2 center;
  double radius{0.0};
  bool known{false};
};

/// Disk world centred at the origin: outer boundary of radius outer_radius,
/// disjoint disk obstacles, and a destination in free space.
struct Workspace {
  double outer_radius{1.0};
  std::vector<DiskObstacle> obstacles;
  Vec2 destination;
  /// Overrides the minimum obstacle radius of curvature used for d_min.
  std::optional<double> rho_min_override;

  /// Minimum radius of curvature over all obstacles (override first);
  /// +inf for an empty world without override.
  double rho_min() const;
  std::size_t known_count() const;
};

/// Throws ScenarioError naming the violated invariant (and obstacle indices).
void validate(const Workspace& ws);

/// Closed symmetric sector of the given range and aperture (rad), pole at
/// the robot, axis along the robot velocity.
struct SensingSector {
  double range{0.0};
  double aperture{0.0};
  Vec2 pole;
  Vec2 axis{1.0, 0.0};
};

bool sector_contains_point(const SensingSector& sector, const Vec2& p);

/// Exact intersection test between the closed disk and the closed sector.
bool sector_detects_disk(const SensingSector& sector, const DiskObstacle& disk);

/// Worst-case distance to an obstacle at the instant it is first detected.
double min_detection_distance(double range, double aperture, double rho_min);

/// Signed distance to the nearest boundary (obstacles and outer disk);
/// negative inside an obstacle or outside the outer disk.
double clearance(const Workspace& ws, const Vec2& p);

/// Distance from p to the closed segment [a, b].
double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b);

}  // namespace navsim
