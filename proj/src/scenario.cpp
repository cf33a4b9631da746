#include "navsim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "navsim/errors.hpp"
#include "navsim/navtrans.hpp"

namespace navsim {
namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : -1; }

void reject_unknown_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ScenarioError("unknown key '" + key + "' in " + where, line_of(kv.first));
  }
}

YAML::Node require_map(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) throw ScenarioError("missing '" + key + "' in " + where, line_of(parent));
  if (!n.IsMap()) throw ScenarioError("'" + key + "' must be a mapping", line_of(n));
  return n;
}

double as_double(const YAML::Node& n, const std::string& what) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw ScenarioError(what + " must be a number", line_of(n));
  }
}

double get_double(const YAML::Node& parent, const std::string& key, double fallback, const std::string& where) {
  const YAML::Node n = parent[key];
  return n ? as_double(n, where + "." + key) : fallback;
}

double require_double(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) throw ScenarioError("missing '" + key + "' in " + where, line_of(parent));
  return as_double(n, where + "." + key);
}

Vec2 as_vec2(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() != 2) throw ScenarioError(what + " must be a [x, y] pair", line_of(n));
  return {as_double(n[0], what + "[0]"), as_double(n[1], what + "[1]")};
}

Vec2 require_vec2(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) throw ScenarioError("missing '" + key + "' in " + where, line_of(parent));
  return as_vec2(n, where + "." + key);
}

std::string get_string(const YAML::Node& parent, const std::string& key, const std::string& fallback) {
  const YAML::Node n = parent[key];
  if (!n) return fallback;
  if (!n.IsScalar()) throw ScenarioError("'" + key + "' must be a scalar", line_of(n));
  return n.as<std::string>();
}

bool get_bool(const YAML::Node& parent, const std::string& key, bool fallback) {
  const YAML::Node n = parent[key];
  if (!n) return fallback;
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    throw ScenarioError("'" + key + "' must be true or false", line_of(n));
  }
}

void check(bool ok, const std::string& msg, const YAML::Node& n) {
  if (!ok) throw ScenarioError(msg, line_of(n));
}

double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }

// Degree value that converts back to exactly this radian value.
double rad_to_deg_exact(double r) {
  double d = r * 180.0 / std::numbers::pi;
  if (deg_to_rad(d) == r) return d;
  double up = d, down = d;
  for (int i = 0; i < 8; ++i) {
    up = std::nextafter(up, INFINITY);
    down = std::nextafter(down, -INFINITY);
    if (deg_to_rad(up) == r) return up;
    if (deg_to_rad(down) == r) return down;
  }
  return d;
}

Workspace parse_workspace(const YAML::Node& w) {
  reject_unknown_keys(w, {"outer_radius", "destination", "rho_min", "obstacles"}, "workspace");
  Workspace ws;
  ws.outer_radius = require_double(w, "outer_radius", "workspace");
  check(ws.outer_radius > 0.0 && std::isfinite(ws.outer_radius), "workspace.outer_radius must be positive", w["outer_radius"]);
  ws.destination = require_vec2(w, "destination", "workspace");
  check(norm(ws.destination) < ws.outer_radius, "destination must lie strictly inside the outer boundary", w["destination"]);
  if (w["rho_min"]) {
    ws.rho_min_override = as_double(w["rho_min"], "workspace.rho_min");
    check(*ws.rho_min_override > 0.0, "workspace.rho_min must be positive", w["rho_min"]);
  }
  if (const YAML::Node obs = w["obstacles"]) {
    check(obs.IsSequence(), "workspace.obstacles must be a list", obs);
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const YAML::Node o = obs[i];
      const std::string tag = "obstacle " + std::to_string(i);
      check(o.IsMap(), tag + " must be a mapping", o);
      reject_unknown_keys(o, {"center", "radius", "known"}, tag);
      DiskObstacle d;
      d.center = require_vec2(o, "center", tag);
      d.radius = require_double(o, "radius", tag);
      d.known = get_bool(o, "known", false);
      check(d.radius > 0.0 && std::isfinite(d.radius), tag + ": radius must be positive", o);
      check(norm(d.center) + d.radius < ws.outer_radius, tag + " touches or crosses the outer boundary", o);
      for (std::size_t j = 0; j < ws.obstacles.size(); ++j)
        check(norm(d.center - ws.obstacles[j].center) > d.radius + ws.obstacles[j].radius,
              "obstacles " + std::to_string(j) + " and " + std::to_string(i) + " overlap", o);
      check(norm(ws.destination - d.center) > d.radius, "destination lies inside " + tag, o);
      ws.obstacles.push_back(d);
    }
  }
  return ws;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError("parse error: " + e.msg, e.mark.line + 1);
  }
  if (!root.IsMap()) throw ScenarioError("scenario must be a mapping", line_of(root));
  reject_unknown_keys(root, {"workspace", "start", "robot", "control", "sensor", "sim", "rng_seed"}, "scenario");

  Scenario sc;
  sc.workspace = parse_workspace(require_map(root, "workspace", "scenario"));
  sc.start = require_vec2(root, "start", "scenario");
  check(clearance(sc.workspace, sc.start) > 0.0, "start position is in collision", root["start"]);

  if (const YAML::Node r = root["robot"]) {
    check(r.IsMap(), "'robot' must be a mapping", r);
    reject_unknown_keys(r, {"model", "mass"}, "robot");
    const std::string model = get_string(r, "model", "kinematic");
    if (model == "kinematic") sc.robot = RobotModel::kinematic;
    else if (model == "dynamic") sc.robot = RobotModel::dynamic;
    else throw ScenarioError("robot.model must be 'kinematic' or 'dynamic'", line_of(r["model"]));
    sc.control.mass = get_double(r, "mass", sc.control.mass, "robot");
    check(sc.control.mass > 0.0, "robot.mass must be positive", r);
  }
  if (const YAML::Node c = root["control"]) {
    check(c.IsMap(), "'control' must be a mapping", c);
    reject_unknown_keys(c, {"K", "mu", "damping", "lambda"}, "control");
    sc.control.K = get_double(c, "K", sc.control.K, "control");
    sc.control.mu = get_double(c, "mu", sc.control.mu, "control");
    sc.control.lambda = get_double(c, "lambda", sc.control.lambda, "control");
    const std::string damping = get_string(c, "damping", "scheduled");
    if (damping == "scheduled") sc.control.damping = DampingMode::scheduled;
    else if (damping == "critical") sc.control.damping = DampingMode::critical;
    else if (damping == "fixed") sc.control.damping = DampingMode::fixed;
    else throw ScenarioError("control.damping must be 'fixed', 'critical' or 'scheduled'", line_of(c["damping"]));
    check(sc.control.K > 0.0 && sc.control.mu > 0.0 && sc.control.lambda > 0.0, "control gains must be positive", c);
  }
  if (const YAML::Node s = root["sensor"]) {
    check(s.IsMap(), "'sensor' must be a mapping", s);
    reject_unknown_keys(s, {"range", "aperture_deg"}, "sensor");
    sc.sensor.range = get_double(s, "range", sc.sensor.range, "sensor");
    check(sc.sensor.range > 0.0, "sensor.range must be positive", s);
    const double deg = get_double(s, "aperture_deg", 60.0, "sensor");
    check(deg > 0.0 && deg <= 360.0, "sensor.aperture_deg must lie in (0, 360]", s);
    sc.sensor.aperture = deg_to_rad(deg);
  } else {
    sc.sensor.aperture = deg_to_rad(60.0);
  }
  if (const YAML::Node s = root["sim"]) {
    check(s.IsMap(), "'sim' must be a mapping", s);
    reject_unknown_keys(s, {"dt", "t_max", "arrival_tolerance", "integrator", "saddle_perturbation"}, "sim");
    sc.sim.dt = get_double(s, "dt", sc.sim.dt, "sim");
    check(sc.sim.dt > 0.0 && sc.sim.dt <= 1e-2, "sim.dt must lie in (0, 0.01]", s);
    sc.sim.t_max = get_double(s, "t_max", sc.sim.t_max, "sim");
    check(sc.sim.t_max > 0.0, "sim.t_max must be positive", s);
    sc.sim.arrival_tolerance = get_double(s, "arrival_tolerance", sc.sim.arrival_tolerance, "sim");
    check(sc.sim.arrival_tolerance > 0.0, "sim.arrival_tolerance must be positive", s);
    check(get_string(s, "integrator", "rk4") == "rk4", "sim.integrator must be 'rk4'", s);
    sc.sim.saddle_perturbation = get_bool(s, "saddle_perturbation", false);
  }
  if (const YAML::Node seed = root["rng_seed"]) {
    try {
      sc.rng_seed = seed.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      throw ScenarioError("rng_seed must be a non-negative integer", line_of(seed));
    }
  }

  validate(sc.workspace);
  try {
    (void)NavTransform::build_all(sc.workspace);
    check_discovery_feasible(sc.workspace);
  } catch (const ScenarioError& e) {
    throw ScenarioError(std::string("collapse neighborhoods infeasible: ") + e.what(), line_of(root["workspace"]));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& sc) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  const auto vec = [&](const Vec2& v) { out << YAML::Flow << YAML::BeginSeq << v.x << v.y << YAML::EndSeq; };
  out << YAML::BeginMap;
  out << YAML::Key << "workspace" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "outer_radius" << YAML::Value << sc.workspace.outer_radius;
  out << YAML::Key << "destination" << YAML::Value;
  vec(sc.workspace.destination);
  if (sc.workspace.rho_min_override) out << YAML::Key << "rho_min" << YAML::Value << *sc.workspace.rho_min_override;
  out << YAML::Key << "obstacles" << YAML::Value << YAML::BeginSeq;
  for (const auto& o : sc.workspace.obstacles) {
    out << YAML::BeginMap << YAML::Key << "center" << YAML::Value;
    vec(o.center);
    out << YAML::Key << "radius" << YAML::Value << o.radius;
    out << YAML::Key << "known" << YAML::Value << o.known << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::Key << "start" << YAML::Value;
  vec(sc.start);
  out << YAML::Key << "robot" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "model" << YAML::Value << (sc.robot == RobotModel::kinematic ? "kinematic" : "dynamic");
  out << YAML::Key << "mass" << YAML::Value << sc.control.mass << YAML::EndMap;
  out << YAML::Key << "control" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "K" << YAML::Value << sc.control.K;
  out << YAML::Key << "mu" << YAML::Value << sc.control.mu;
  const char* damping = sc.control.damping == DampingMode::fixed      ? "fixed"
                        : sc.control.damping == DampingMode::critical ? "critical"
                                                                      : "scheduled";
  out << YAML::Key << "damping" << YAML::Value << damping;
  out << YAML::Key << "lambda" << YAML::Value << sc.control.lambda << YAML::EndMap;
  out << YAML::Key << "sensor" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "range" << YAML::Value << sc.sensor.range;
  out << YAML::Key << "aperture_deg" << YAML::Value << rad_to_deg_exact(sc.sensor.aperture) << YAML::EndMap;
  out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dt" << YAML::Value << sc.sim.dt;
  out << YAML::Key << "t_max" << YAML::Value << sc.sim.t_max;
  out << YAML::Key << "arrival_tolerance" << YAML::Value << sc.sim.arrival_tolerance;
  out << YAML::Key << "integrator" << YAML::Value << "rk4";
  out << YAML::Key << "saddle_perturbation" << YAML::Value << sc.sim.saddle_perturbation << YAML::EndMap;
  out << YAML::Key << "rng_seed" << YAML::Value << sc.rng_seed;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) {
  const auto& wa = a.workspace;
  const auto& wb = b.workspace;
  if (wa.outer_radius != wb.outer_radius || wa.destination != wb.destination ||
      wa.rho_min_override != wb.rho_min_override || wa.obstacles.size() != wb.obstacles.size())
    return false;
  for (std::size_t i = 0; i < wa.obstacles.size(); ++i) {
    const auto& p = wa.obstacles[i];
    const auto& q = wb.obstacles[i];
    if (p.center != q.center || p.radius != q.radius || p.known != q.known) return false;
  }
  const auto& ca = a.control;
  const auto& cb = b.control;
  return a.start == b.start && a.robot == b.robot && ca.K == cb.K && ca.mu == cb.mu && ca.mass == cb.mass &&
         ca.damping == cb.damping && ca.lambda == cb.lambda && a.sensor.range == b.sensor.range &&
         a.sensor.aperture == b.sensor.aperture && a.sim.dt == b.sim.dt && a.sim.t_max == b.sim.t_max &&
         a.sim.arrival_tolerance == b.sim.arrival_tolerance && a.sim.integrator == b.sim.integrator &&
         a.sim.saddle_perturbation == b.sim.saddle_perturbation && a.rng_seed == b.rng_seed;
}

}  // namespace navsim
