// navsim command-line frontend.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "navsim/analysis.hpp"
#include "navsim/errors.hpp"
#include "navsim/navtrans.hpp"
#include "navsim/potential.hpp"
#include "navsim/report.hpp"
#include "navsim/scenario.hpp"
#include "navsim/sim.hpp"

namespace fs = std::filesystem;
using namespace navsim;

namespace {

enum Exit : int {
  kArrived = 0,
  kTimeout = 2,
  kCollision = 3,
  kSaddleStall = 4,
  kGradientMismatch = 5,
  kUsage = 64,
  kValidation = 65,
  kNumeric = 70,
  kIo = 74,
};

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::arrived: return kArrived;
    case Outcome::timeout: return kTimeout;
    case Outcome::collision: return kCollision;
    case Outcome::saddle_stall: return kSaddleStall;
  }
  return kNumeric;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec2 parse_vec2(const std::string& s) {
  std::stringstream ss(s);
  double x = 0, y = 0;
  char comma = 0;
  if (!(ss >> x >> comma >> y) || comma != ',' || !ss.eof()) throw UsageError("expected x,y but got '" + s + "'");
  return {x, y};
}

Scenario load_with_env(const std::string& path) {
  Scenario sc = load_scenario(path);
  if (const char* s = std::getenv("NAVSIM_SEED")) {
    try {
      sc.rng_seed = std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("NAVSIM_SEED is not an unsigned integer");
    }
  }
  return sc;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
  if (!f) throw std::ios_base::failure("cannot write " + p.string());
}

// Three-disk world used by `analyze basins` without --scenario.
Scenario default_basin_scenario() {
  Scenario sc;
  sc.workspace.outer_radius = 2.0;
  sc.workspace.destination = {0.0, 0.0};
  sc.workspace.obstacles = {{{0.9, 0.4}, 0.25, true}, {{-0.6, 0.8}, 0.3, true}, {{-0.3, -1.0}, 0.35, true}};
  sc.sensor.aperture = M_PI / 3;
  sc.rng_seed = 7;
  return sc;
}

struct Arrangement {
  std::string scenario;
  std::string pd = "0,0";
  std::vector<std::string> obstacles;
  int k = 0;

  PointWorld point_world() const {
    if (!scenario.empty()) return NavTransform::build_all(load_with_env(scenario).workspace).point_world();
    PointWorld pw;
    pw.destination_point = parse_vec2(pd);
    for (const auto& o : obstacles) pw.obstacle_points.push_back(parse_vec2(o));
    return pw;
  }
  int k_for(const PointWorld& pw) const {
    const int m = static_cast<int>(pw.count());
    return k > 0 ? k : m + 1;
  }
};

void add_arrangement_flags(CLI::App* cmd, Arrangement& a) {
  cmd->add_option("--scenario", a.scenario, "scenario file (all obstacles known)");
  cmd->add_option("--pd", a.pd, "destination point x,y in the point world");
  cmd->add_option("--obstacle", a.obstacles, "obstacle point x,y (repeatable)");
  cmd->add_option("--k", a.k, "exponent k (default M+1)");
}

int cmd_simulate(const std::string& path, const std::string& out) {
  const Scenario sc = load_with_env(path);
  const Trajectory tr = simulate(sc);
  fs::create_directories(out);
  std::ostringstream traj, events, summary;
  write_trajectory_csv(traj, tr);
  write_events_csv(events, tr);
  write_summary_json(summary, sc, tr);
  write_file(fs::path(out) / "trajectory.csv", traj.str());
  write_file(fs::path(out) / "events.csv", events.str());
  write_file(fs::path(out) / "summary.json", summary.str());
  write_file(fs::path(out) / "trajectory.svg", render_svg(sc, tr));
  std::cout << summary.str();
  return exit_code(tr.outcome);
}

int cmd_field(const std::string& path, int res, const std::string& out) {
  if (res < 16 || res > 4096) throw UsageError("--res must lie in [16, 4096]");
  const Scenario sc = load_with_env(path);
  std::ostringstream csv;
  write_field_csv(csv, compute_field(sc.workspace, res));
  write_file(out, csv.str());
  return 0;
}

int cmd_critical_points(const Arrangement& a, int grid) {
  const PointWorld pw = a.point_world();
  const int k = a.k_for(pw);
  if (k <= static_cast<int>(pw.count())) throw UsageError("--k must exceed the obstacle count");
  write_critical_points_csv(std::cout, find_critical_points(pw, k, grid));
  return 0;
}

int cmd_degenerate(int k, int pairs, double angle_deg, bool angle_set) {
  if (pairs < 1) throw UsageError("--pairs must be at least 1");
  if (k < 1) throw UsageError("--k must be positive");
  DegenerateSearchOptions opts;
  if (angle_set) opts.pair_angle = angle_deg * M_PI / 180.0;
  const DegenerateSearchResult r = degenerate_search(k, pairs, opts);
  nlohmann::ordered_json j;
  j["status"] = r.found ? "found" : "not_found";
  j["k"] = k;
  j["pairs"] = pairs;
  j["best_residual"] = r.best_residual;
  j["gradient_norm"] = r.gradient_norm;
  j["lambda"] = r.report.lambda_scalar;
  j["hessian_frobenius"] = r.report.hessian_frobenius;
  j["axis_condition_residual"] = r.axis_condition_residual;
  j["projection_formula_residual"] = r.projection_formula_residual;
  j["test_point"] = {r.test_point.x, r.test_point.y};
  j["destination"] = {r.point_world.destination_point.x, r.point_world.destination_point.y};
  auto obs = nlohmann::json::array();
  for (const Vec2& p : r.point_world.obstacle_points) obs.push_back({p.x, p.y});
  j["obstacles"] = obs;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_attractivity(const Arrangement& a) {
  const PointWorld pw = a.point_world();
  const int k = a.k_for(pw);
  nlohmann::ordered_json j;
  j["k"] = k;
  j["M"] = pw.count();
  j["attractive"] = attractivity_check(pw, k);
  j["growth_exponent"] = growth_exponent(pw, k);
  j["expected_exponent"] = 2 * (k - static_cast<int>(pw.count()));
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_basins(const std::string& path, int trials, std::optional<std::uint64_t> seed) {
  if (trials < 1) throw UsageError("--trials must be positive");
  const Scenario sc = path.empty() ? default_basin_scenario() : load_with_env(path);
  const std::uint64_t s = seed ? *seed : sc.rng_seed;
  const BasinStatistics b = basin_statistics(sc, trials, s);
  nlohmann::ordered_json j;
  j["trials"] = b.trials;
  j["seed"] = s;
  j["arrived"] = b.arrived;
  j["saddle_stall"] = b.saddle_stall;
  j["collision"] = b.collision;
  j["timeout"] = b.timeout;
  j["fraction_converged"] = b.fraction_converged();
  std::cout << j.dump(2) << '\n';
  return 0;
}

// Compares the analytic gradient of the scenario's navigation function
// against central differences at random free points.
int cmd_check_gradients(const std::string& path, int samples) {
  if (samples < 1) throw UsageError("--samples must be positive");
  const Scenario sc = load_with_env(path);
  const NavFunction nf(NavTransform::build_all(sc.workspace));
  std::mt19937_64 rng(sc.rng_seed);
  std::uniform_real_distribution<double> u(-sc.workspace.outer_radius, sc.workspace.outer_radius);
  double worst = 0.0;
  int checked = 0;
  while (checked < samples) {
    const Vec2 x{u(rng), u(rng)};
    if (clearance(sc.workspace, x) < 0.05 * sc.workspace.outer_radius) continue;
    if (norm(x - sc.workspace.destination) < 1e-3) continue;
    const Vec2 g = nf.evaluate(x).gradient;
    const double h = 1e-6;
    const Vec2 fd{(nf.value(x + Vec2{h, 0}) - nf.value(x - Vec2{h, 0})) / (2 * h),
                  (nf.value(x + Vec2{0, h}) - nf.value(x - Vec2{0, h})) / (2 * h)};
    const double err = norm(g - fd) / std::max(norm(g), 1e-3);
    worst = std::max(worst, err);
    ++checked;
  }
  nlohmann::ordered_json j;
  j["samples"] = checked;
  j["max_relative_error"] = worst;
  j["pass"] = worst < 1e-5;
  std::cout << j.dump(2) << '\n';
  return worst < 1e-5 ? 0 : kGradientMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"navsim: harmonic navigation function simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out, analysis_scenario;
  int res = 256, samples = 200, trials = 500, grid = 40, degenerate_k = 4, pairs = 1;
  double angle_deg = 0.0;
  std::optional<std::uint64_t> seed;
  Arrangement arr;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write trajectory, events, summary and SVG");
  sim->add_option("scenario", scenario_path)->required();
  sim->add_option("--out", out)->required();

  auto* field = app.add_subcommand("field", "export the normalized potential on a grid");
  field->add_option("scenario", scenario_path)->required();
  field->add_option("--res", res);
  field->add_option("--out", out)->required();

  auto* analyze = app.add_subcommand("analyze", "point-world analyses");
  analyze->require_subcommand(1);
  auto* cp = analyze->add_subcommand("critical-points", "locate and classify critical points of phi_k");
  add_arrangement_flags(cp, arr);
  cp->add_option("--grid", grid, "seed grid size")->check(CLI::Range(16, 1000));
  auto* deg = analyze->add_subcommand("degenerate", "search for degenerate critical points");
  deg->add_option("--k", degenerate_k);
  deg->add_option("--pairs", pairs);
  auto* angle_opt = deg->add_option("--angle-deg", angle_deg, "fix the pair half-angle from h_d");
  auto* att = analyze->add_subcommand("attractivity", "growth of phi_k along rays");
  add_arrangement_flags(att, arr);
  auto* bas = analyze->add_subcommand("basins", "Monte-Carlo convergence statistics");
  bas->add_option("--scenario", analysis_scenario);
  bas->add_option("--trials", trials);
  bas->add_option("--seed", seed);

  auto* chk = app.add_subcommand("check-gradients", "compare analytic and finite-difference gradients");
  chk->add_option("scenario", scenario_path)->required();
  chk->add_option("--samples", samples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(scenario_path, out);
    if (*field) return cmd_field(scenario_path, res, out);
    if (*cp) return cmd_critical_points(arr, grid);
    if (*deg) return cmd_degenerate(degenerate_k, pairs, angle_deg, angle_opt->count() > 0);
    if (*att) return cmd_attractivity(arr);
    if (*bas) return cmd_basins(analysis_scenario, trials, seed);
    if (*chk) return cmd_check_gradients(scenario_path, samples);
  } catch (const UsageError& e) {
    std::cerr << "navsim: " << e.what() << '\n';
    return kUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "navsim: " << e.what() << '\n';
    return kValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "navsim: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "navsim: numerical error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
