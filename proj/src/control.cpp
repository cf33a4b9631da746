#include "navsim/control.hpp"

#include <cmath>
#include <stdexcept>

namespace navsim {

Vec2 kinematic_control(const Vec2& x, const NavFunction& nf, double K) {
  const auto e = nf.evaluate(x);
  const double gn = norm(e.gradient);
  if (gn < kCriticalGradient || e.value < 1e-16) return {};
  return e.gradient * (-K * std::sqrt(2.0 * e.value) / gn);
}

Vec2 dynamic_control(const RobotState& state, const NavFunction& nf, double mu, double lambda) {
  return grad_varphi(state.position, nf) * (-mu) - state.velocity * lambda;
}

double critical_damping(double mu, double mass, const PointWorld& pw, int k) {
  if (!(mu > 0.0) || !(mass > 0.0)) throw std::invalid_argument("critical_damping: mu and mass must be positive");
  if (k < 1) throw std::invalid_argument("critical_damping: k must be positive");
  double log_prod = 0.0;
  for (const Vec2& p : pw.obstacle_points) log_prod += std::log(norm(pw.destination_point - p));
  return 2.0 * std::sqrt(2.0 * mu * mass) * std::exp(-log_prod / k);
}

double dissipation(const DampingState& ds, double V, double mu, double mass, const PointWorld& pw, int k) {
  if (!(ds.d_min > 0.0)) throw std::invalid_argument("dissipation: d_min must be positive");
  if (V < mu) return critical_damping(mu, mass, pw, k);
  return mass / ds.d_min * ds.last_discovery_speed;
}

double stopping_distance(double mass, double speed, double lambda) { return mass * speed / lambda; }

}  // namespace navsim
