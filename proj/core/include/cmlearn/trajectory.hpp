#pragma once

#include <span>
#include <vector>

#include "cmlearn/types.hpp"

namespace cml {

// Windows a raw 100 Hz trajectory into direction samples: one MotionSample
// per non-overlapping block of `window` raw samples. Direction is the
// normalized displacement across the block, contact is decided by the mean
// force magnitude against force_threshold, and stationary blocks
// (displacement < 1e-6 m) are dropped.
// Throws Error{no_motion} when every block is stationary and
// Error{invalid_input} on non-finite data (naming the sample).
std::vector<MotionSample> preprocess(const Trajectory& traj, int window, double force_threshold);

// Unit direction of the net displacement (endpoint difference).
// Throws Error{degenerate_geometry} when the net displacement is under 1e-4 m.
Vec3 mean_actual_direction(const Trajectory& traj);

// Per-demonstration unit motion direction from windowed samples: endpoint
// difference of the window positions, falling back to the summed window
// directions when the endpoints coincide.
Vec3 mean_motion_direction(std::span<const MotionSample> samples);

}  // namespace cml
