#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elastica/dynamics.hpp"
#include "elastica/landmarks.hpp"

namespace elastica {

// Shortest decimal string that parses back to exactly the same binary64.
std::string format_double(double x);

// Trajectory CSV column contract (one row per stored sample):
//   t, c{i}_x{j} ... (vertices, vertex-major), then v{i}_x{j} (lagrangian)
//   or a{i}_x{j} (hamiltonian), then energy, length, min_edge,
//   vertex_sum_inf, momentum_sum_inf.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Inverse of write_trajectory_csv (bit-exact round trip).
Trajectory read_trajectory_csv(const std::string& path);

// Landmark flow CSV: t, q{i}_x{j} ..., p{i}_x{j} ..., hamiltonian,
// min_pair_distance, momentum_sum_inf.
void write_landmark_trajectory_csv(const std::string& path, const LandmarkTrajectory& traj);

// One or more named n x n weight grids, each introduced by a
// "# kind=<name> n=<n>" comment line and followed by n plain CSV rows.
void write_kernel_csv(const std::string& path,
                      const std::vector<std::pair<std::string, Eigen::MatrixXd>>& grids);

}  // namespace elastica
