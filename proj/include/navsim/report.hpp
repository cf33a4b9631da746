#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "navsim/analysis.hpp"
#include "navsim/sim.hpp"

namespace navsim {

/// Header `t,x,y,vx,vy,theta,V,n,k,lambda`; floats with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);
std::vector<Sample> read_trajectory_csv(std::istream& in);

/// Header `time,obstacle_index,speed_at_discovery,k_after`.
void write_events_csv(std::ostream& out, const Trajectory& tr);

/// JSON summary: outcome, max_speed, min_clearance, discovery_count, ...
void write_summary_json(std::ostream& out, const Scenario& sc, const Trajectory& tr);

/// Workspace, obstacles coloured by discovery order, trajectory, and the
/// sensing sector at each discovery and at the final pose.
std::string render_svg(const Scenario& sc, const Trajectory& tr);

/// Samples of varphi over the bounding square of the workspace, all
/// obstacles known. Unreachable cells are NaN.
struct FieldGrid {
  int resolution{0};
  double x_min{0.0}, x_max{0.0}, y_min{0.0}, y_max{0.0};
  std::vector<double> values;  // row-major, iy * resolution + ix

  Vec2 cell_center(int ix, int iy) const;
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy * resolution + ix)]; }
};

FieldGrid compute_field(const Workspace& ws, int resolution);

/// Header `ix,iy,x,y,varphi`; varphi empty for unreachable cells.
void write_field_csv(std::ostream& out, const FieldGrid& grid);

/// Header `hx,hy,grad_norm,eig1,eig2,class`.
void write_critical_points_csv(std::ostream& out, const std::vector<CriticalPoint>& cps);

/// "%.17g"
std::string format_double(double v);

}  // namespace navsim
