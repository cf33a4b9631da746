#include "navsim/sim.hpp"

#include <cmath>
#include <string>

#include "navsim/errors.hpp"

namespace navsim {
namespace {

constexpr int kStallSteps = 1000;
// Chattering: net displacement over a stall window below this share of the
// commanded path length.
constexpr double kChatterRatio = 1e-2;
constexpr double kRestSpeed = 1e-12;

void check_config(const SimConfig& c) {
  if (!(c.dt > 0.0) || c.dt > 1e-2) throw ScenarioError("sim.dt must lie in (0, 0.01]");
  if (!(c.t_max > 0.0)) throw ScenarioError("sim.t_max must be positive");
  if (!(c.arrival_tolerance > 0.0)) throw ScenarioError("sim.arrival_tolerance must be positive");
}

void check_sensor(const SensorParams& s) {
  if (!(s.range > 0.0)) throw ScenarioError("sensor.range must be positive");
  if (!(s.aperture > 0.0) || s.aperture > 2.0 * 3.14159265358979323846 + 1e-12)
    throw ScenarioError("sensor.aperture must lie in (0, 360] degrees");
}

// Shared bookkeeping for both robot models.
class Run {
 public:
  Run(const Scenario& sc, const SimConfig& cfg)
      : cfg_(cfg),
        sensor_(sc.sensor),
        ws_(initialize_known(sc.workspace, sc.start, sc.sensor)),
        nf_(NavTransform::build_known(ws_)) {
    check_config(cfg);
    traj_.min_clearance = clearance(ws_, sc.start);
    window_start_ = sc.start;
  }

  Workspace& workspace() { return ws_; }
  const NavFunction& nav() const { return nf_; }
  Trajectory& trajectory() { return traj_; }
  const SimConfig& config() const { return cfg_; }

  /// Returns true when at least one obstacle was registered.
  bool sense(const Vec2& x, const Vec2& axis, double t, double speed) {
    const auto found = sense_and_register(x, axis, ws_, sensor_);
    for (const std::size_t idx : found) {
      nf_ = NavFunction(rebuild_with_obstacle(nf_.transform(), idx, ws_.obstacles[idx]));
      traj_.events.push_back({t, idx, speed, nf_.k()});
    }
    return !found.empty();
  }

  /// Termination checks done at every sample; returns true to stop.
  bool finish_sample(const Sample& s, double grad_norm) {
    traj_.samples.push_back(s);
    traj_.max_speed = std::max(traj_.max_speed, norm(s.velocity));
    if (norm(s.position - ws_.destination) < cfg_.arrival_tolerance) {
      traj_.outcome = Outcome::arrived;
      return true;
    }
    stall_count_ = (grad_norm < kCriticalGradient && s.theta > 1e-9) ? stall_count_ + 1 : 0;
    if (stall_count_ >= kStallSteps || chattering(s)) {
      traj_.outcome = Outcome::saddle_stall;
      return true;
    }
    if (s.t >= cfg_.t_max * (1.0 - 1e-12)) {
      traj_.outcome = Outcome::timeout;
      return true;
    }
    return false;
  }

  /// Collision check against the true workspace; returns true to stop.
  bool collided(const Vec2& x) {
    const double c = clearance(ws_, x);
    traj_.min_clearance = std::min(traj_.min_clearance, c);
    if (c <= 0.0) {
      traj_.outcome = Outcome::collision;
      return true;
    }
    return false;
  }

  int n() const { return static_cast<int>(nf_.point_world().count()); }

 private:
  // Robot pinned at a critical point with the gradient never small enough for
  // the plain test: the kinematic law keeps its speed there and the RK4
  // stages cancel.
  bool chattering(const Sample& s) {
    path_ += norm(s.velocity) * cfg_.dt;
    if (++window_steps_ < kStallSteps) return false;
    const bool stuck = s.theta > 1e-9 && path_ > 0.0 && norm(s.position - window_start_) < kChatterRatio * path_;
    window_start_ = s.position;
    window_steps_ = 0;
    path_ = 0.0;
    return stuck;
  }

  SimConfig cfg_;
  SensorParams sensor_;
  Workspace ws_;
  NavFunction nf_;
  Trajectory traj_;
  int stall_count_{0};
  int window_steps_{0};
  double path_{0.0};
  Vec2 window_start_;
};

Vec2 initial_axis(const NavFunction& nf, const Vec2& x) {
  const Vec2 g = grad_varphi(x, nf);
  if (norm(g) < kCriticalGradient) return {1.0, 0.0};
  return normalized(-g);
}

void check_finite(const Vec2& v, double t) {
  if (!is_finite(v)) throw NumericError("non-finite state at t = " + std::to_string(t));
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::arrived: return "arrived";
    case Outcome::timeout: return "timeout";
    case Outcome::collision: return "collision";
    case Outcome::saddle_stall: return "saddle_stall";
  }
  return "unknown";
}

std::vector<std::size_t> sense_and_register(const Vec2& position, const Vec2& axis, Workspace& ws,
                                            const SensorParams& sensor) {
  const SensingSector sector{sensor.range, sensor.aperture, position, axis};
  std::vector<std::size_t> found;
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i) {
    auto& o = ws.obstacles[i];
    if (o.known || !sector_detects_disk(sector, o)) continue;
    o.known = true;
    found.push_back(i);
  }
  return found;
}

Workspace initialize_known(Workspace ws, const Vec2& start, const SensorParams& sensor) {
  check_sensor(sensor);
  if (clearance(ws, start) <= 0.0) throw ScenarioError("start position is in collision");
  const double d_min = min_detection_distance(sensor.range, sensor.aperture, ws.rho_min());
  for (auto& o : ws.obstacles)
    if (norm(start - o.center) - o.radius < d_min) o.known = true;
  return ws;
}

Trajectory simulate_kinematic(const Scenario& sc, const SimConfig& cfg) {
  validate(sc.workspace);
  Run run(sc, cfg);
  const double K = sc.control.K;
  const double dt = cfg.dt;
  const auto control = [&](const Vec2& x) { return kinematic_control(x, run.nav(), K); };

  Vec2 x = sc.start;
  Vec2 axis = initial_axis(run.nav(), x);
  for (long step = 0;; ++step) {
    const double t = static_cast<double>(step) * dt;
    if (run.collided(x)) break;

    Vec2 u = control(x);
    if (norm(u) > kRestSpeed) axis = normalized(u);
    if (run.sense(x, axis, t, norm(u))) {
      u = control(x);
      if (norm(u) > kRestSpeed) axis = normalized(u);
    }

    const auto e = run.nav().evaluate(x);
    const int n = run.n();
    if (run.finish_sample({t, x, u, e.value, e.value, n, run.nav().k(), 0.0}, norm(e.gradient))) break;

    if (cfg.saddle_perturbation && norm(e.gradient) < kCriticalGradient && e.value > 1e-9)
      x += perp(axis) * 1e-9;

    try {
      const Vec2 k1 = u;
      const Vec2 k2 = control(x + k1 * (0.5 * dt));
      const Vec2 k3 = control(x + k2 * (0.5 * dt));
      const Vec2 k4 = control(x + k3 * dt);
      x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    } catch (const DomainError&) {
      run.trajectory().outcome = Outcome::collision;
      break;
    }
    check_finite(x, t);
  }
  return run.trajectory();
}

Trajectory simulate_dynamic(const Scenario& sc, const SimConfig& cfg) {
  validate(sc.workspace);
  Run run(sc, cfg);
  const ControlParams& cp = sc.control;
  if (!(cp.mu > 0.0) || !(cp.mass > 0.0)) throw ScenarioError("control.mu and robot.mass must be positive");
  const double dt = cfg.dt;
  DampingState ds{0.0, min_detection_distance(sc.sensor.range, sc.sensor.aperture, sc.workspace.rho_min())};

  RobotState s{sc.start, {}, 0.0};
  Vec2 axis = initial_axis(run.nav(), s.position);
  for (long step = 0;; ++step) {
    const double t = static_cast<double>(step) * dt;
    s.time = t;
    if (run.collided(s.position)) break;

    const double speed = norm(s.velocity);
    if (speed > kRestSpeed) axis = s.velocity / speed;
    if (run.sense(s.position, axis, t, speed)) ds.last_discovery_speed = speed;

    const NavFunction& nf = run.nav();
    const auto e = nf.evaluate(s.position);
    const double V = cp.mu * e.value + 0.5 * cp.mass * speed * speed;
    double lambda = cp.lambda;
    switch (cp.damping) {
      case DampingMode::fixed: break;
      case DampingMode::critical: lambda = critical_damping(cp.mu, cp.mass, nf.point_world(), nf.k()); break;
      case DampingMode::scheduled: lambda = dissipation(ds, V, cp.mu, cp.mass, nf.point_world(), nf.k()); break;
    }
    if (run.finish_sample({t, s.position, s.velocity, e.value, V, run.n(), nf.k(), lambda}, norm(e.gradient)))
      break;

    if (cfg.saddle_perturbation && norm(e.gradient) < kCriticalGradient && e.value > 1e-9)
      s.position += perp(axis) * 1e-9;

    // Lambda is frozen over the step.
    const auto accel = [&](const Vec2& x, const Vec2& v) {
      return (grad_varphi(x, nf) * (-cp.mu) - v * lambda) / cp.mass;
    };
    try {
      const Vec2 x0 = s.position, v0 = s.velocity;
      const Vec2 a1 = accel(x0, v0);
      const Vec2 x1 = v0;
      const Vec2 v2 = v0 + a1 * (0.5 * dt);
      const Vec2 a2 = accel(x0 + x1 * (0.5 * dt), v2);
      const Vec2 v3 = v0 + a2 * (0.5 * dt);
      const Vec2 a3 = accel(x0 + v2 * (0.5 * dt), v3);
      const Vec2 v4 = v0 + a3 * dt;
      const Vec2 a4 = accel(x0 + v3 * dt, v4);
      s.position = x0 + (v0 + v2 * 2.0 + v3 * 2.0 + v4) * (dt / 6.0);
      s.velocity = v0 + (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (dt / 6.0);
    } catch (const DomainError&) {
      run.trajectory().outcome = Outcome::collision;
      break;
    }
    check_finite(s.position, t);
    check_finite(s.velocity, t);
  }
  return run.trajectory();
}

Trajectory simulate(const Scenario& sc) {
  return sc.robot == RobotModel::kinematic ? simulate_kinematic(sc, sc.sim) : simulate_dynamic(sc, sc.sim);
}

}  // namespace navsim
