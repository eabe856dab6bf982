#include "elastica/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "elastica/csv.hpp"
#include "elastica/errors.hpp"

namespace elastica {

void render_trajectory_frames(const Trajectory& traj, const std::string& out_dir, int width) {
  if (traj.grid.d != 2) throw ValidationError("render: planar trajectories only");
  if (traj.samples.empty()) throw ValidationError("render: empty trajectory");
  if (width < 16) throw ValidationError("render: width too small");

  double min_x = traj.samples[0].vertices(0, 0), max_x = min_x;
  double min_y = traj.samples[0].vertices(0, 1), max_y = min_y;
  for (const TrajectorySample& s : traj.samples)
    for (int i = 0; i < traj.grid.n; ++i) {
      min_x = std::min(min_x, s.vertices(i, 0));
      max_x = std::max(max_x, s.vertices(i, 0));
      min_y = std::min(min_y, s.vertices(i, 1));
      max_y = std::max(max_y, s.vertices(i, 1));
    }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-6});
  const double pad = 0.05 * span;
  // SVG y grows downward; emit flipped y so the frames read right side up.
  const double vx = min_x - pad;
  const double vy = -max_y - pad;
  const double vw = (max_x - min_x) + 2 * pad;
  const double vh = (max_y - min_y) + 2 * pad;
  const int height = std::max(16, static_cast<int>(std::lround(width * vh / vw)));
  const double stroke = 0.005 * span;

  std::filesystem::create_directories(out_dir);
  for (std::size_t frame = 0; frame < traj.samples.size(); ++frame) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06zu.svg", frame);
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ValidationError("render: cannot write '" + path.string() + "'");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"" << format_double(vx) << " " << format_double(vy) << " "
        << format_double(vw) << " " << format_double(vh) << "\">\n";
    out << "  <!-- t = " << format_double(traj.samples[frame].t) << " -->\n";
    out << "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\""
        << format_double(stroke) << "\" points=\"";
    const Eigen::MatrixXd& v = traj.samples[frame].vertices;
    for (int i = 0; i < traj.grid.n; ++i) {
      if (i) out << " ";
      out << format_double(v(i, 0)) << "," << format_double(-v(i, 1));
    }
    out << "\"/>\n</svg>\n";
    if (!out) throw ValidationError("render: write failed for '" + path.string() + "'");
  }
}

}  // namespace elastica
