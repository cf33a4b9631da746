#include "navsim/navtrans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "navsim/errors.hpp"

namespace navsim {
namespace {

// Smallest admissible annulus width as a fraction of the obstacle radius.
constexpr double kMinWidthFraction = 1e-2;
// Share of the room up to an existing neighborhood a new annulus may use.
constexpr double kExistingRoomShare = 0.9;

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

struct Step {
  double value;
  double slope;
};

// zeta(u) = 1 / (1 + exp(w)), w = 1/u - 1/(1-u), on the open unit interval.
Step smooth_step(double u) {
  if (u <= 0.0) return {0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0};
  const double w = 1.0 / u - 1.0 / (1.0 - u);
  const double z = logistic(-w);
  const double zc = logistic(w);
  return {z, z * zc * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)))};
}

CollapseNeighborhood make_neighborhood(std::size_t index, const DiskObstacle& o, double width) {
  return {index, o.center, o.radius, o.radius + width};
}

}  // namespace

MapValue collapse_map(const CollapseNeighborhood& n, const Vec2& x) {
  const Vec2 d = x - n.center;
  const double r = norm(d);
  if (r <= n.inner_radius)
    throw DomainError("collapse_map: point inside obstacle " + std::to_string(n.obstacle_index));
  if (r >= n.outer_radius) return {x, Mat2::identity()};

  const double width = n.outer_radius - n.inner_radius;
  const Step z = smooth_step((n.outer_radius - r) / width);
  const double s = r - n.inner_radius * z.value;
  const double ds = 1.0 + n.inner_radius * z.slope / width;
  const double ratio = s / r;
  const Vec2 dir = d / r;
  return {n.center + d * ratio, Mat2::identity() * ratio + Mat2::outer(dir, dir) * (ds - ratio)};
}

MapValue outer_blowup(double outer_radius, const Vec2& x) {
  const double denom = outer_radius * outer_radius - norm_sq(x);
  if (!(denom > 0.0) || norm(x) >= outer_radius)
    throw DomainError("outer_blowup: point on or beyond the outer boundary");
  const double inv = 1.0 / denom;
  return {x * inv, Mat2::identity() * inv + Mat2::outer(x, x) * (2.0 * inv * inv)};
}

NavTransform::NavTransform(double outer_radius, const Vec2& destination)
    : outer_radius_(outer_radius), destination_(destination) {
  if (!(outer_radius > 0.0)) throw ScenarioError("navigation transform: outer radius must be positive");
  point_world_.destination_point = outer_blowup(outer_radius_, destination_).point;
}

void NavTransform::append(const CollapseNeighborhood& n) {
  neighborhoods_.push_back(n);
  point_world_.obstacle_points.push_back(outer_blowup(outer_radius_, n.center).point);
}

NavTransform NavTransform::build(const Workspace& ws, std::span<const std::size_t> indices) {
  NavTransform nt(ws.outer_radius, ws.destination);
  for (const std::size_t i : indices) {
    const DiskObstacle& o = ws.obstacles.at(i);
    double gap = std::min(ws.outer_radius - norm(o.center) - o.radius, norm(ws.destination - o.center) - o.radius);
    for (const std::size_t j : indices) {
      if (j == i) continue;
      const DiskObstacle& p = ws.obstacles.at(j);
      gap = std::min(gap, norm(o.center - p.center) - o.radius - p.radius);
    }
    const double width = std::min(o.radius, 0.5 * gap);
    if (!(width >= kMinWidthFraction * o.radius))
      throw ScenarioError("obstacle " + std::to_string(i) + ": no room for a collapse neighborhood");
    nt.append(make_neighborhood(i, o, width));
  }
  return nt;
}

NavTransform NavTransform::build_known(const Workspace& ws) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i)
    if (ws.obstacles[i].known) idx.push_back(i);
  return build(ws, idx);
}

NavTransform NavTransform::build_all(const Workspace& ws) {
  std::vector<std::size_t> idx(ws.obstacles.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return build(ws, idx);
}

MapValue NavTransform::operator()(const Vec2& x) const {
  Vec2 y = x;
  Mat2 jac = Mat2::identity();
  for (const auto& n : neighborhoods_) {
    const MapValue c = collapse_map(n, y);
    y = c.point;
    jac = c.jacobian * jac;
  }
  const MapValue b = outer_blowup(outer_radius_, y);
  return {b.point, b.jacobian * jac};
}

bool NavTransform::in_domain(const Vec2& x) const {
  if (!(norm(x) < outer_radius_)) return false;
  return std::none_of(neighborhoods_.begin(), neighborhoods_.end(), [&](const CollapseNeighborhood& n) {
    return norm(x - n.center) <= n.inner_radius;
  });
}

NavTransform rebuild_with_obstacle(const NavTransform& nt, std::size_t obstacle_index,
                                   const DiskObstacle& o) {
  const std::string tag = "obstacle " + std::to_string(obstacle_index);
  double gap = std::min(nt.outer_radius() - norm(o.center) - o.radius, norm(nt.destination() - o.center) - o.radius);
  double room = std::numeric_limits<double>::infinity();
  for (const auto& n : nt.neighborhoods()) {
    if (n.obstacle_index == obstacle_index) throw ScenarioError(tag + " is already collapsed");
    const double dist = norm(o.center - n.center);
    gap = std::min(gap, dist - o.radius - n.inner_radius);
    room = std::min(room, dist - o.radius - n.outer_radius);
  }
  if (!(room > 0.0)) throw ScenarioError(tag + " intersects an existing collapse neighborhood");
  const double width = std::min({o.radius, 0.5 * gap, kExistingRoomShare * room});
  if (!(width >= kMinWidthFraction * o.radius))
    throw ScenarioError(tag + ": no room for a collapse neighborhood");
  NavTransform out = nt;
  out.append(make_neighborhood(obstacle_index, o, width));
  return out;
}

void check_discovery_feasible(const Workspace& ws) {
  // Widest annulus obstacle i can ever receive: no other obstacle limits it.
  const auto widest = [&](const DiskObstacle& o) {
    const double gap =
        std::min(ws.outer_radius - norm(o.center) - o.radius, norm(ws.destination - o.center) - o.radius);
    return std::min(o.radius, 0.5 * gap);
  };
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i)
    for (std::size_t j = 0; j < ws.obstacles.size(); ++j) {
      const DiskObstacle& first = ws.obstacles[i];
      const DiskObstacle& later = ws.obstacles[j];
      if (i == j || later.known) continue;
      const double gap = norm(first.center - later.center) - first.radius - later.radius;
      const double room = gap - widest(first);
      if (!(room > 0.0) || !(kExistingRoomShare * room >= kMinWidthFraction * later.radius))
        throw ScenarioError("obstacles " + std::to_string(i) + " and " + std::to_string(j) +
                            " are too close for discovery of obstacle " + std::to_string(j) + " after obstacle " +
                            std::to_string(i));
    }
}

}  // namespace navsim
