#pragma once

#include "navsim/potential.hpp"
#include "navsim/state.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

enum class DampingMode {
  fixed,      // constant lambda
  critical,   // lambda_c of the current point world
  scheduled,  // energy-triggered switch between lambda_c and stopping damping
};

struct ControlParams {
  double K{1.0};       // kinematic gain, m/s
  double mu{10.0};     // potential weight, J
  double mass{1.0};    // kg
  DampingMode damping{DampingMode::scheduled};
  double lambda{1.0};  // used by DampingMode::fixed, kg/s
};

/// Quantities the dissipation schedule keeps between discovery instants.
struct DampingState {
  double last_discovery_speed{0.0};  // |xdot| at the latest discovery, m/s
  double d_min{0.0};                 // worst-case detection distance, m
};

/// Gradients below this norm are treated as critical points.
inline constexpr double kCriticalGradient = 1e-12;

/// u = -K sqrt(2 Theta) grad(Theta)/|grad(Theta)|. Zero at critical points
/// and at the destination.
Vec2 kinematic_control(const Vec2& x, const NavFunction& nf, double K);

/// f = -mu grad(Theta) - lambda xdot.
Vec2 dynamic_control(const RobotState& state, const NavFunction& nf, double mu, double lambda);

/// lambda_c = 2 sqrt(2 mu m) prod |Pd - Pi|^(-1/k).
double critical_damping(double mu, double mass, const PointWorld& pw, int k);

/// Energy-triggered damping: lambda_c while V < mu, otherwise
/// m |xdot(T_n)| / d_min so the robot stops within d_min.
double dissipation(const DampingState& ds, double V, double mu, double mass, const PointWorld& pw, int k);

/// Total travel of m xddot + lambda xdot = 0 from the given speed.
double stopping_distance(double mass, double speed, double lambda);

}  // namespace navsim
