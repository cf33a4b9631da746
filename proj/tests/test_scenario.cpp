#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "navsim/errors.hpp"
#include "navsim/scenario.hpp"

using namespace navsim;

namespace {

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Scenario, MinimalEmptyWorld) {
  const Scenario sc = parse_scenario(
      "workspace:\n"
      "  outer_radius: 2.0\n"
      "  destination: [0, 0]\n"
      "start: [1, 0]\n");
  EXPECT_EQ(sc.workspace.obstacles.size(), 0u);
  EXPECT_EQ(sc.robot, RobotModel::kinematic);
  EXPECT_NEAR(sc.sensor.aperture, M_PI / 3, 1e-15);
  EXPECT_EQ(sc.sim.dt, 1e-3);
}

TEST(Scenario, OverlapNamesBothIndices) {
  const std::string text =
      "workspace:\n"
      "  outer_radius: 3.0\n"
      "  destination: [-2, 0]\n"
      "  obstacles:\n"
      "    - {center: [0, 0], radius: 0.5}\n"
      "    - {center: [0.6, 0], radius: 0.3}\n"
      "start: [2, 0]\n";
  EXPECT_NE(error_text(text).find("obstacles 0 and 1 overlap"), std::string::npos) << error_text(text);
}

TEST(Scenario, DestinationInsideObstacle) {
  const std::string text =
      "workspace:\n"
      "  outer_radius: 3.0\n"
      "  destination: [0.1, 0]\n"
      "  obstacles:\n"
      "    - {center: [0, 0], radius: 0.5}\n"
      "start: [2, 0]\n";
  EXPECT_NE(error_text(text).find("destination lies inside obstacle 0"), std::string::npos) << error_text(text);
}

TEST(Scenario, LinePreciseErrors) {
  EXPECT_EQ(error_line("workspace:\n  outer_radius: 2\n  destination: [0, 0]\nstart: [1, 0]\nsensor:\n  range: -1\n"), 6);
  EXPECT_EQ(error_line("workspace:\n  outer_radius: 2\n  destination: [0, 0]\nstart: [1, 0]\nbogus: 3\n"), 5);
  EXPECT_EQ(error_line("workspace:\n  outer_radius: 2\n  destination: [0, 0, 1]\nstart: [1, 0]\n"), 3);
  EXPECT_GT(error_line("workspace: [\n"), 0);
}

TEST(Scenario, RoundTrip) {
  for (const char* name : {"slalom_kinematic.yaml", "slalom_dynamic.yaml", "basin3.yaml", "empty.yaml", "m1.yaml"}) {
    const Scenario sc = load_scenario(std::filesystem::path(NAVSIM_SCENARIO_DIR) / name);
    const Scenario again = parse_scenario(dump_scenario(sc));
    EXPECT_TRUE(again == sc) << name;
    EXPECT_EQ(dump_scenario(again), dump_scenario(sc)) << name;
  }
}

TEST(Scenario, RoundTripAwkwardValues) {
  Scenario sc = load_scenario(std::filesystem::path(NAVSIM_SCENARIO_DIR) / "m1.yaml");
  sc.sensor.aperture = 1.0 / 3.0;
  sc.start = {0.1 + 0.2, -1.0 / 7.0};
  sc.workspace.rho_min_override = 0.05;
  sc.control.damping = DampingMode::fixed;
  sc.control.lambda = 2.5;
  sc.rng_seed = 18446744073709551615ull;
  EXPECT_TRUE(parse_scenario(dump_scenario(sc)) == sc);
}

TEST(Scenario, MissingFile) { EXPECT_THROW(load_scenario("/nonexistent/x.yaml"), ScenarioError); }
