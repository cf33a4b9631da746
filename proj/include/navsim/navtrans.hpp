#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "navsim/geometry.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

/// Annulus rho < |x - c| < epsilon in which an obstacle disk is collapsed
/// onto its center. Identity outside.
struct CollapseNeighborhood {
  std::size_t obstacle_index{0};
  Vec2 center;
  double inner_radius{0.0};
  double outer_radius{0.0};
};

/// Images of obstacles and destination in the point world.
struct PointWorld {
  std::vector<Vec2> obstacle_points;
  Vec2 destination_point;

  std::size_t count() const { return obstacle_points.size(); }
};

/// A point together with the Jacobian of the map that produced it.
struct MapValue {
  Vec2 point;
  Mat2 jacobian;
};

/// Smooth radial collapse of the obstacle boundary onto its center. The
/// radial profile is s(r) = r - rho * zeta((eps - r)/(eps - rho)) with the
/// C-infinity step zeta(u) = g(u) / (g(u) + g(1 - u)), g(u) = exp(-1/u).
MapValue collapse_map(const CollapseNeighborhood& nbhd, const Vec2& x);

/// x / (R0^2 - |x|^2): diffeomorphism of the open disk onto the plane.
MapValue outer_blowup(double outer_radius, const Vec2& x);

/// Navigation transformation Phi: workspace interior -> point world.
/// Immutable; adding an obstacle yields a new transform.
class NavTransform {
 public:
  NavTransform(double outer_radius, const Vec2& destination);

  /// Transform over the listed obstacles of ws. Annulus widths are
  /// min(rho_i, gap_i / 2), gap_i being the clearance from obstacle i to the
  /// nearest listed obstacle, the outer boundary or the destination.
  static NavTransform build(const Workspace& ws, std::span<const std::size_t> indices);
  /// Transform over the obstacles of ws flagged known.
  static NavTransform build_known(const Workspace& ws);
  /// Transform over every obstacle of ws.
  static NavTransform build_all(const Workspace& ws);

  MapValue operator()(const Vec2& x) const;
  Vec2 map(const Vec2& x) const { return (*this)(x).point; }

  /// True iff x is strictly inside the outer disk and outside every
  /// obstacle handled by this transform.
  bool in_domain(const Vec2& x) const;

  const PointWorld& point_world() const { return point_world_; }
  const std::vector<CollapseNeighborhood>& neighborhoods() const { return neighborhoods_; }
  double outer_radius() const { return outer_radius_; }
  const Vec2& destination() const { return destination_; }

 private:
  friend NavTransform rebuild_with_obstacle(const NavTransform&, std::size_t, const DiskObstacle&);
  void append(const CollapseNeighborhood& n);

  double outer_radius_;
  Vec2 destination_;
  std::vector<CollapseNeighborhood> neighborhoods_;
  PointWorld point_world_;
};

/// Returns a transform that also collapses new_obstacle. The existing
/// neighborhoods are untouched, so the map is unchanged outside the new
/// annulus. The new annulus is shrunk to stay clear of the existing ones;
/// throws ScenarioError when no admissible width remains.
NavTransform rebuild_with_obstacle(const NavTransform& nt, std::size_t obstacle_index,
                                   const DiskObstacle& new_obstacle);

/// Throws ScenarioError unless rebuild_with_obstacle succeeds for every
/// discovery order of the unknown obstacles of ws.
void check_discovery_feasible(const Workspace& ws);

}  // namespace navsim
