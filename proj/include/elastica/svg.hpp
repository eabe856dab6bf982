#pragma once

#include <string>

#include "elastica/dynamics.hpp"

namespace elastica {

// One SVG per stored sample (frame_000000.svg, ...) in out_dir, all sharing
// a viewport fitted to the whole trajectory with a 5% margin. Planar only.
void render_trajectory_frames(const Trajectory& traj, const std::string& out_dir,
                              int width = 640);

}  // namespace elastica
