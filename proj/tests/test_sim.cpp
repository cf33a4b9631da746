#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "navsim/errors.hpp"
#include "navsim/scenario.hpp"
#include "navsim/sim.hpp"
#include "oracles.hpp"

using namespace navsim;
using std::numbers::pi;

namespace {

Scenario empty_scenario(Vec2 start, RobotModel model = RobotModel::kinematic) {
  Scenario sc;
  sc.workspace.outer_radius = 2.0;
  sc.workspace.destination = {0.0, 0.0};
  sc.start = start;
  sc.robot = model;
  sc.sensor = {1.0, pi / 3};
  sc.sim.t_max = 120;
  return sc;
}

Vec2 inverse_blowup(double R0, const Vec2& h) {
  const double n = norm(h);
  const double r = (std::sqrt(1 + 4 * n * n * R0 * R0) - 1) / (2 * n);
  return h * (r / n);
}

double distance_to_dest(const Sample& s) { return norm(s.position); }

}  // namespace

TEST(Sense, NothingInSector) {
  Workspace ws;
  ws.outer_radius = 3;
  ws.obstacles = {{{0, 2}, 0.2, false}};
  EXPECT_TRUE(sense_and_register({0, 0}, {1, 0}, ws, {1.0, pi / 3}).empty());
  EXPECT_FALSE(ws.obstacles[0].known);
}

TEST(Sense, RegistersOnce) {
  Workspace ws;
  ws.outer_radius = 3;
  ws.obstacles = {{{0.5, 0}, 0.2, false}};
  const auto first = sense_and_register({0, 0}, {1, 0}, ws, {1.0, pi / 3});
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0], 0u);
  EXPECT_TRUE(ws.obstacles[0].known);
  EXPECT_TRUE(sense_and_register({0, 0}, {1, 0}, ws, {1.0, pi / 3}).empty());
}

TEST(Sense, FirstDetectionNoCloserThanDmin) {
  // Straight-line approaches towards a disk at 100 headings and lateral offsets.
  for (double aperture : {pi / 6, pi / 3, pi / 2, pi}) {
    const SensorParams sensor{1.0, aperture};
    const DiskObstacle disk{{0, 0}, 0.05, false};
    const double d_min = min_detection_distance(sensor.range, sensor.aperture, disk.radius);
    double worst = 1e300;
    for (int h = 0; h < 100; ++h) {
      const double heading = 2 * pi * h / 100;
      const Vec2 dir{std::cos(heading), std::sin(heading)};
      for (double offset = -0.049; offset <= 0.049; offset += 0.004) {
        const Vec2 start = dir * -1.2 + perp(dir) * offset;
        const auto detects = [&](double s) {
          return sector_detects_disk({sensor.range, sensor.aperture, start + dir * s, dir}, disk);
        };
        // Coarse march, then bisection on the first bracket.
        double lo = 0, hi = -1;
        for (double s = 0; s < 1.2; s += 1e-3) {
          if (detects(s)) {
            hi = s;
            break;
          }
          lo = s;
        }
        ASSERT_GT(hi, 0) << "never detected";
        for (int it = 0; it < 60; ++it) (detects(0.5 * (lo + hi)) ? hi : lo) = 0.5 * (lo + hi);
        worst = std::min(worst, norm(start + dir * hi) - disk.radius);
      }
    }
    EXPECT_GE(worst, d_min - 1e-9) << aperture;
  }
}

TEST(InitializeKnown, Thresholds) {
  const SensorParams sensor{1.0, pi / 3};
  Workspace ws;
  ws.outer_radius = 5;
  ws.rho_min_override = 0.05;
  const double d_min = min_detection_distance(1.0, pi / 3, 0.05);
  ws.obstacles = {{{1.0, 0}, 0.2, false}, {{0, 0.2 + d_min / 2}, 0.2, false}};
  const Workspace out = initialize_known(ws, {0, 0}, sensor);
  EXPECT_FALSE(out.obstacles[0].known);
  EXPECT_TRUE(out.obstacles[1].known);
}

TEST(InitializeKnown, ExactlyDminIsNotKnown) {
  // Aperture pi gives d_min = range = 1 exactly; the disk boundary is 1 away.
  Workspace ws;
  ws.outer_radius = 5;
  ws.obstacles = {{{-1.25, 0}, 0.25, false}};
  ASSERT_EQ(norm(ws.obstacles[0].center) - 0.25, min_detection_distance(1.0, pi, 0.25));
  EXPECT_FALSE(initialize_known(ws, {0, 0}, {1.0, pi}).obstacles[0].known);
  ws.obstacles[0].center.x = -1.2499;
  EXPECT_TRUE(initialize_known(ws, {0, 0}, {1.0, pi}).obstacles[0].known);
}

TEST(Kinematic, StartAtDestination) {
  const Trajectory tr = simulate(empty_scenario({0, 0}));
  EXPECT_EQ(tr.outcome, Outcome::arrived);
  ASSERT_EQ(tr.samples.size(), 1u);
  EXPECT_EQ(tr.samples[0].t, 0.0);
}

TEST(Kinematic, EmptyWorldThetaStrictlyDecreasing) {
  for (const Vec2 start : {Vec2{1.5, 0.7}, Vec2{-1.2, -1.1}, Vec2{0.1, -1.9}}) {
    const Trajectory tr = simulate(empty_scenario(start));
    EXPECT_EQ(tr.outcome, Outcome::arrived);
    for (std::size_t i = 1; i < tr.samples.size(); ++i) EXPECT_LT(tr.samples[i].theta, tr.samples[i - 1].theta);
  }
}

TEST(Kinematic, SpeedLaw) {
  const Trajectory tr = simulate(load_scenario(NAVSIM_SCENARIO_DIR "/m1.yaml"));
  ASSERT_EQ(tr.outcome, Outcome::arrived);
  for (const Sample& s : tr.samples) EXPECT_NEAR(norm(s.velocity), std::sqrt(2 * s.theta), 1e-12);
}

TEST(Kinematic, SixObstacleScenario) {
  const Scenario sc = load_scenario(NAVSIM_SCENARIO_DIR "/slalom_kinematic.yaml");
  const Trajectory tr = simulate(sc);
  EXPECT_EQ(tr.outcome, Outcome::arrived);
  EXPECT_GT(tr.min_clearance, 0.0);
  ASSERT_EQ(tr.events.size(), 6u);
  for (std::size_t i = 1; i < tr.events.size(); ++i) {
    EXPECT_GE(tr.events[i].time - tr.events[i - 1].time, sc.sim.dt);
    EXPECT_EQ(tr.events[i].k_after, tr.events[i - 1].k_after + 1);
  }
  for (std::size_t i = 1; i < tr.samples.size(); ++i)
    if (tr.samples[i].n == tr.samples[i - 1].n) EXPECT_LE(tr.samples[i].theta, tr.samples[i - 1].theta + 1e-9);
}

TEST(Kinematic, Timeout) {
  Scenario sc = empty_scenario({1.5, 0.5});
  sc.sim.t_max = 1e-3;
  EXPECT_EQ(simulate(sc).outcome, Outcome::timeout);
}

TEST(Kinematic, StallAtExactSaddle) {
  // Point world Pd = 0, P1 = (2,0), k = 2: saddle at (4,0).
  Scenario sc = empty_scenario({0, 0});
  sc.workspace.obstacles = {{inverse_blowup(2.0, {2, 0}), 0.05, true}};
  sc.start = inverse_blowup(2.0, {4, 0});
  sc.sim.t_max = 5;
  const Trajectory tr = simulate(sc);
  EXPECT_EQ(tr.outcome, Outcome::saddle_stall);
  sc.sim.saddle_perturbation = true;
  sc.sim.t_max = 120;
  EXPECT_EQ(simulate(sc).outcome, Outcome::arrived);
}

TEST(Kinematic, StallOnStableManifold) {
  // Starting on the axis beyond the saddle the robot gets pinned there.
  Scenario sc = empty_scenario({0, 0});
  sc.workspace.obstacles = {{inverse_blowup(2.0, {2, 0}), 0.05, true}};
  sc.start = inverse_blowup(2.0, {10, 0});
  const Trajectory tr = simulate(sc);
  EXPECT_EQ(tr.outcome, Outcome::saddle_stall);
  EXPECT_NEAR(tr.samples.back().position.x, inverse_blowup(2.0, {4, 0}).x, 1e-3);
  EXPECT_LT(tr.samples.back().t, 10.0);
}

TEST(Kinematic, Determinism) {
  const Scenario sc = load_scenario(NAVSIM_SCENARIO_DIR "/slalom_kinematic.yaml");
  const Trajectory a = simulate(sc), b = simulate(sc);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].position, b.samples[i].position);
    EXPECT_EQ(a.samples[i].theta, b.samples[i].theta);
  }
}

TEST(Dynamic, StartAtDestination) {
  EXPECT_EQ(simulate(empty_scenario({0, 0}, RobotModel::dynamic)).outcome, Outcome::arrived);
}

TEST(Dynamic, EmptyWorldCriticalDamping) {
  Scenario sc = empty_scenario({1.2, -0.8}, RobotModel::dynamic);
  sc.control.damping = DampingMode::critical;
  const Trajectory tr = simulate(sc);
  ASSERT_EQ(tr.outcome, Outcome::arrived);
  bool settled = false;
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    EXPECT_LE(tr.samples[i].energy, tr.samples[i - 1].energy + 1e-9);
    settled = settled || tr.samples[i - 1].theta < 0.01;
    if (settled) EXPECT_LE(distance_to_dest(tr.samples[i]), distance_to_dest(tr.samples[i - 1]));
  }
}

TEST(Dynamic, EnergyDecrementMatchesDissipation) {
  Scenario sc = empty_scenario({1.2, -0.8}, RobotModel::dynamic);
  sc.control.damping = DampingMode::fixed;
  sc.control.lambda = 3.0;
  sc.sim.t_max = 5;
  const Trajectory tr = simulate(sc);
  // Composite Simpson of lambda |v|^2 over pairs of steps.
  for (std::size_t i = 2; i < tr.samples.size(); i += 2) {
    const Sample& a = tr.samples[i - 2];
    const Sample& m = tr.samples[i - 1];
    const Sample& b = tr.samples[i];
    const double dissipated =
        (b.t - a.t) / 6 * 3.0 * (norm_sq(a.velocity) + 4 * norm_sq(m.velocity) + norm_sq(b.velocity));
    if (dissipated < 1e-6) continue;
    EXPECT_NEAR(a.energy - b.energy, dissipated, 1e-6 * dissipated);
  }
}

TEST(Dynamic, SpeedBoundAndMonotoneEnergy) {
  const Scenario sc = load_scenario(NAVSIM_SCENARIO_DIR "/slalom_dynamic.yaml");
  const Trajectory tr = simulate(sc);
  EXPECT_EQ(tr.outcome, Outcome::arrived);
  EXPECT_GT(tr.min_clearance, 0.0);
  EXPECT_EQ(tr.events.size(), 6u);
  EXPECT_LT(tr.max_speed, std::sqrt(2 * sc.control.mu / sc.control.mass));
  for (std::size_t i = 1; i < tr.samples.size(); ++i)
    if (tr.samples[i].n == tr.samples[i - 1].n) EXPECT_LE(tr.samples[i].energy, tr.samples[i - 1].energy + 1e-9);
}

TEST(Dynamic, LowEnergyUsesCriticalDamping) {
  // From rest V < mu always holds (Theta < 1), so only the first branch is active.
  Scenario sc = empty_scenario({1.2, -0.8}, RobotModel::dynamic);
  sc.sim.t_max = 1;
  const Trajectory tr = simulate(sc);
  for (const Sample& s : tr.samples) EXPECT_NEAR(s.lambda, 2 * std::sqrt(2 * 10.0), 1e-12);
}

TEST(Sim, RejectsBadConfig) {
  Scenario sc = empty_scenario({1, 0});
  sc.sim.dt = 0.1;
  EXPECT_THROW(simulate(sc), ScenarioError);
  sc = empty_scenario({5, 0});
  EXPECT_THROW(simulate(sc), ScenarioError);
}
