#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "cmlearn/environment.hpp"
#include "cmlearn/polygon.hpp"
#include "cmlearn/sim.hpp"
#include "cmlearn/types.hpp"
#include "cmlearn/voting.hpp"

namespace cml {

// Trajectory CSV: header `t,x,y,z,fx,fy,fz`, SI units, one row per sample.
// Extra trailing columns (e.g. the setpoint columns of a simulation trace)
// are ignored on read, so traces feed straight back in.
Trajectory read_trajectory_csv(const std::filesystem::path& path);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

// Simulation trace CSV: the trajectory schema plus `sx,sy,sz`.
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

// Motion model JSON with keys desired_direction, n_compliant,
// compliant_axes, stiffness_stiff, stiffness_compliant, damping, speed.
MotionModel read_motion_model(const std::filesystem::path& path);
void write_motion_model(const std::filesystem::path& path, const MotionModel& model);

// Environment config JSON; see the README for per-type examples.
Environment read_environment(const std::filesystem::path& path);
void write_environment(const std::filesystem::path& path, const Environment& env);

// Debug dumps for plotting: the voting grid as i,j,theta_x,theta_y,count
// rows and polygon vertices as polygon,vertex,theta_x,theta_y rows.
void write_grid_csv(const std::filesystem::path& path, const VotingGrid& grid);
void write_polygons_csv(const std::filesystem::path& path,
                        std::span<const AngularPolygon> polys);

}  // namespace cml
