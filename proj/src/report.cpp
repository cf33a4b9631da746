#include "navsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "navsim/navtrans.hpp"
#include "navsim/potential.hpp"

namespace navsim {
namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Discovery-order palette.
constexpr const char* kPalette[] = {"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd",
                                    "#8c564b", "#e377c2", "#bcbd22", "#17becf"};

std::string sector_path(const Vec2& pole, const Vec2& axis, const SensorParams& s) {
  std::ostringstream p;
  const double half = 0.5 * s.aperture;
  if (half >= M_PI) {
    p << "<circle class=\"sector\" cx=\"" << fixed(pole.x) << "\" cy=\"" << fixed(pole.y) << "\" r=\""
      << fixed(s.range) << "\"/>";
    return p.str();
  }
  const double base = std::atan2(axis.y, axis.x);
  const Vec2 a{pole.x + s.range * std::cos(base - half), pole.y + s.range * std::sin(base - half)};
  const Vec2 b{pole.x + s.range * std::cos(base + half), pole.y + s.range * std::sin(base + half)};
  p << "<path class=\"sector\" d=\"M " << fixed(pole.x) << ' ' << fixed(pole.y) << " L " << fixed(a.x) << ' '
    << fixed(a.y) << " A " << fixed(s.range) << ' ' << fixed(s.range) << " 0 " << (half > M_PI / 2 ? 1 : 0)
    << " 1 " << fixed(b.x) << ' ' << fixed(b.y) << " Z\"/>";
  return p.str();
}

Vec2 sample_axis(const Sample& s) {
  const Vec2 a = normalized(s.velocity, 1e-12);
  return a == Vec2{} ? Vec2{1.0, 0.0} : a;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  out << "t,x,y,vx,vy,theta,V,n,k,lambda\n";
  for (const Sample& s : tr.samples) {
    out << format_double(s.t) << ',' << format_double(s.position.x) << ',' << format_double(s.position.y) << ','
        << format_double(s.velocity.x) << ',' << format_double(s.velocity.y) << ',' << format_double(s.theta) << ','
        << format_double(s.energy) << ',' << s.n << ',' << s.k << ',' << format_double(s.lambda) << '\n';
  }
}

std::vector<Sample> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,vx,vy,theta,V,n,k,lambda")
    throw std::runtime_error("trajectory CSV: unexpected header");
  std::vector<Sample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw std::runtime_error("trajectory CSV: expected 10 fields");
    Sample s;
    s.t = std::stod(f[0]);
    s.position = {std::stod(f[1]), std::stod(f[2])};
    s.velocity = {std::stod(f[3]), std::stod(f[4])};
    s.theta = std::stod(f[5]);
    s.energy = std::stod(f[6]);
    s.n = std::stoi(f[7]);
    s.k = std::stoi(f[8]);
    s.lambda = std::stod(f[9]);
    out.push_back(s);
  }
  return out;
}

void write_events_csv(std::ostream& out, const Trajectory& tr) {
  out << "time,obstacle_index,speed_at_discovery,k_after\n";
  for (const auto& e : tr.events)
    out << format_double(e.time) << ',' << e.obstacle_index << ',' << format_double(e.speed_at_discovery) << ','
        << e.k_after << '\n';
}

void write_summary_json(std::ostream& out, const Scenario& sc, const Trajectory& tr) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(tr.outcome));
  j["robot"] = sc.robot == RobotModel::kinematic ? "kinematic" : "dynamic";
  j["final_time"] = tr.samples.empty() ? 0.0 : tr.samples.back().t;
  j["max_speed"] = tr.max_speed;
  j["min_clearance"] = tr.min_clearance;
  j["discovery_count"] = tr.events.size();
  if (sc.robot == RobotModel::dynamic) j["speed_bound"] = std::sqrt(2.0 * sc.control.mu / sc.control.mass);
  out << j.dump(2) << '\n';
}

std::string render_svg(const Scenario& sc, const Trajectory& tr) {
  const Workspace& ws = sc.workspace;
  const double R = ws.outer_radius;
  const double pad = 0.05 * R;
  std::map<std::size_t, std::size_t> order;
  for (std::size_t i = 0; i < tr.events.size(); ++i) order[tr.events[i].obstacle_index] = i;

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" << fixed(-R - pad) << ' '
    << fixed(-R - pad) << ' ' << fixed(2 * (R + pad)) << ' ' << fixed(2 * (R + pad)) << "\">\n";
  s << "<style>.sector{fill:#4a90d9;fill-opacity:0.15;stroke:#4a90d9;stroke-width:" << fixed(0.002 * R)
    << "}.traj{fill:none;stroke:#000000;stroke-width:" << fixed(0.004 * R) << "}</style>\n";
  s << "<g transform=\"scale(1,-1)\">\n";
  s << "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"" << fixed(R) << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\""
    << fixed(0.006 * R) << "\"/>\n";
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i) {
    const auto& o = ws.obstacles[i];
    const auto it = order.find(i);
    const std::string fill = it != order.end() ? kPalette[it->second % std::size(kPalette)]
                             : o.known         ? "#404040"
                                               : "#c0c0c0";
    s << "<circle class=\"obstacle\" data-index=\"" << i << "\" cx=\"" << fixed(o.center.x) << "\" cy=\""
      << fixed(o.center.y) << "\" r=\"" << fixed(o.radius) << "\" fill=\"" << fill << "\"/>\n";
  }
  if (!tr.samples.empty()) {
    const std::size_t stride = std::max<std::size_t>(1, tr.samples.size() / 2000);
    s << "<polyline class=\"traj\" points=\"";
    for (std::size_t i = 0; i < tr.samples.size(); i += stride)
      s << fixed(tr.samples[i].position.x) << ',' << fixed(tr.samples[i].position.y) << ' ';
    s << fixed(tr.samples.back().position.x) << ',' << fixed(tr.samples.back().position.y) << "\"/>\n";
    const double dt = sc.sim.dt;
    for (const auto& e : tr.events) {
      const auto idx = static_cast<std::size_t>(std::llround(e.time / dt));
      const Sample& smp = tr.samples[std::min(idx, tr.samples.size() - 1)];
      s << sector_path(smp.position, sample_axis(smp), sc.sensor) << '\n';
    }
    const Sample& last = tr.samples.back();
    s << sector_path(last.position, sample_axis(last), sc.sensor) << '\n';
  }
  s << "<circle class=\"destination\" cx=\"" << fixed(ws.destination.x) << "\" cy=\"" << fixed(ws.destination.y)
    << "\" r=\"" << fixed(0.015 * R) << "\" fill=\"#2ca02c\"/>\n";
  s << "<circle class=\"start\" cx=\"" << fixed(sc.start.x) << "\" cy=\"" << fixed(sc.start.y) << "\" r=\""
    << fixed(0.015 * R) << "\" fill=\"#1f77b4\"/>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

Vec2 FieldGrid::cell_center(int ix, int iy) const {
  return {x_min + (x_max - x_min) * (ix + 0.5) / resolution, y_min + (y_max - y_min) * (iy + 0.5) / resolution};
}

FieldGrid compute_field(const Workspace& ws, int resolution) {
  if (resolution < 16 || resolution > 4096) throw std::invalid_argument("field resolution must lie in [16, 4096]");
  const NavFunction nf(NavTransform::build_all(ws));
  FieldGrid g;
  g.resolution = resolution;
  g.x_min = g.y_min = -ws.outer_radius;
  g.x_max = g.y_max = ws.outer_radius;
  g.values.assign(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution),
                  std::numeric_limits<double>::quiet_NaN());
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      const Vec2 x = g.cell_center(ix, iy);
      if (clearance(ws, x) > 0.0) g.values[static_cast<std::size_t>(iy * resolution + ix)] = nf.value(x);
    }
  return g;
}

void write_field_csv(std::ostream& out, const FieldGrid& g) {
  out << "ix,iy,x,y,varphi\n";
  for (int iy = 0; iy < g.resolution; ++iy)
    for (int ix = 0; ix < g.resolution; ++ix) {
      const Vec2 c = g.cell_center(ix, iy);
      const double v = g.at(ix, iy);
      out << ix << ',' << iy << ',' << format_double(c.x) << ',' << format_double(c.y) << ',';
      if (!std::isnan(v)) out << format_double(v);
      out << '\n';
    }
}

void write_critical_points_csv(std::ostream& out, const std::vector<CriticalPoint>& cps) {
  out << "hx,hy,grad_norm,eig1,eig2,class\n";
  for (const auto& cp : cps)
    out << format_double(cp.location.x) << ',' << format_double(cp.location.y) << ','
        << format_double(cp.gradient_norm) << ',' << format_double(cp.eigenvalues.first) << ','
        << format_double(cp.eigenvalues.second) << ',' << to_string(cp.classification) << '\n';
}

}  // namespace navsim
