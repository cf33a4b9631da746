#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "navsim/control.hpp"
#include "navsim/geometry.hpp"
#include "navsim/potential.hpp"
#include "navsim/state.hpp"

namespace navsim {

struct SensorParams {
  double range{1.0};     // m
  double aperture{0.0};  // rad
};

enum class Integrator { rk4 };

struct SimConfig {
  double dt{1e-3};                  // s, at most 1e-2
  double t_max{120.0};              // s
  double arrival_tolerance{1e-3};   // m
  Integrator integrator{Integrator::rk4};
  /// Nudge the robot by 1e-9 m when it sits exactly on a critical point.
  bool saddle_perturbation{false};
};

enum class RobotModel { kinematic, dynamic };

struct Scenario {
  Workspace workspace;
  Vec2 start;
  RobotModel robot{RobotModel::kinematic};
  ControlParams control;
  SensorParams sensor;
  SimConfig sim;
  std::uint64_t rng_seed{0};
};

struct DiscoveryEvent {
  double time{0.0};
  std::size_t obstacle_index{0};
  double speed_at_discovery{0.0};
  int k_after{1};
};

/// One log row. Theta, V, n, k and lambda are those in force after any
/// discovery at this instant, i.e. the ones driving the next step.
struct Sample {
  double t{0.0};
  Vec2 position;
  Vec2 velocity;
  double theta{0.0};
  double energy{0.0};
  int n{0};
  int k{1};
  double lambda{0.0};
};

enum class Outcome { arrived, timeout, collision, saddle_stall };

std::string_view to_string(Outcome o);

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<DiscoveryEvent> events;
  Outcome outcome{Outcome::timeout};
  double min_clearance{0.0};  // over samples, against the true workspace
  double max_speed{0.0};
};

/// Marks every unknown obstacle intersecting the sector (pole at the robot,
/// given axis) as known. Returns the newly known indices in index order.
std::vector<std::size_t> sense_and_register(const Vec2& position, const Vec2& axis, Workspace& ws,
                                            const SensorParams& sensor);

/// Obstacles whose clearance from start is strictly below d_min become known.
Workspace initialize_known(Workspace ws, const Vec2& start, const SensorParams& sensor);

/// First-order robot xdot = u under the kinematic law with on-the-fly
/// obstacle discovery.
Trajectory simulate_kinematic(const Scenario& scenario, const SimConfig& config);

/// Point mass m xddot = f from rest, damping per scenario.control.damping.
Trajectory simulate_dynamic(const Scenario& scenario, const SimConfig& config);

/// Dispatches on scenario.robot with scenario.sim.
Trajectory simulate(const Scenario& scenario);

}  // namespace navsim
