#include "elastica/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "elastica/errors.hpp"

namespace elastica {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view token, const std::string& where) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ValidationError("csv: bad number '" + std::string(token) + "' in " + where);
  return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("csv: cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out = open_for_write(path);
  const int n = traj.grid.n, d = traj.grid.d;
  const char* costate = traj.chart == Chart::lagrangian ? "v" : "a";

  out << "t";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out << ",c" << i << "_x" << j;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out << "," << costate << i << "_x" << j;
  out << ",energy,length,min_edge,vertex_sum_inf,momentum_sum_inf\n";

  for (const TrajectorySample& s : traj.samples) {
    out << format_double(s.t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) out << "," << format_double(s.vertices(i, j));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) out << "," << format_double(s.costate(i, j));
    out << "," << format_double(s.energy) << "," << format_double(s.length) << ","
        << format_double(s.min_edge) << "," << format_double(s.vertex_sum_inf) << ","
        << format_double(s.momentum_sum_inf) << "\n";
  }
  if (!out) throw ValidationError("csv: write failed for '" + path + "'");
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: empty file '" + path + "'");

  const std::vector<std::string> header = split(line, ',');
  int n = 0, d = 0;
  std::size_t col = 1;
  while (col < header.size() && header[col].size() > 1 && header[col][0] == 'c') {
    int i = 0, j = 0;
    if (std::sscanf(header[col].c_str(), "c%d_x%d", &i, &j) == 2) {
      n = std::max(n, i + 1);
      d = std::max(d, j + 1);
      ++col;
    } else {
      break;
    }
  }
  if (n < 2 || d < 2) throw ValidationError("csv: header has no vertex columns");
  if (col >= header.size()) throw ValidationError("csv: header has no costate columns");
  Chart chart;
  if (header[col][0] == 'v')
    chart = Chart::lagrangian;
  else if (header[col][0] == 'a')
    chart = Chart::hamiltonian;
  else
    throw ValidationError("csv: unexpected costate column '" + header[col] + "'");
  const std::size_t expected = 1 + 2 * std::size_t(n) * d + 5;
  if (header.size() != expected)
    throw ValidationError("csv: header has " + std::to_string(header.size()) +
                          " columns, expected " + std::to_string(expected));

  Trajectory traj{chart, GridInfo(n, d), {}, std::nullopt, std::nullopt};
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    const std::string where = "line " + std::to_string(line_no);
    if (cells.size() != expected)
      throw ValidationError("csv: " + where + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(expected));
    TrajectorySample s{0, Eigen::MatrixXd(n, d), Eigen::MatrixXd(n, d), 0, 0, 0, 0, 0};
    std::size_t k = 0;
    s.t = parse_double(cells[k++], where);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) s.vertices(i, j) = parse_double(cells[k++], where);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) s.costate(i, j) = parse_double(cells[k++], where);
    s.energy = parse_double(cells[k++], where);
    s.length = parse_double(cells[k++], where);
    s.min_edge = parse_double(cells[k++], where);
    s.vertex_sum_inf = parse_double(cells[k++], where);
    s.momentum_sum_inf = parse_double(cells[k++], where);
    traj.samples.push_back(std::move(s));
  }
  if (traj.samples.empty()) throw ValidationError("csv: no samples in '" + path + "'");
  return traj;
}

void write_landmark_trajectory_csv(const std::string& path, const LandmarkTrajectory& traj) {
  std::ofstream out = open_for_write(path);
  if (traj.samples.empty()) throw ValidationError("csv: empty landmark trajectory");
  const int n = static_cast<int>(traj.samples.front().points.rows());
  const int d = static_cast<int>(traj.samples.front().points.cols());

  out << "t";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out << ",q" << i << "_x" << j;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out << ",p" << i << "_x" << j;
  out << ",hamiltonian,min_pair_distance,momentum_sum_inf\n";

  for (const LandmarkSample& s : traj.samples) {
    out << format_double(s.t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) out << "," << format_double(s.points(i, j));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) out << "," << format_double(s.momenta(i, j));
    out << "," << format_double(s.hamiltonian) << "," << format_double(s.min_pair_distance)
        << "," << format_double(s.momentum_sum_inf) << "\n";
  }
  if (!out) throw ValidationError("csv: write failed for '" + path + "'");
}

void write_kernel_csv(const std::string& path,
                      const std::vector<std::pair<std::string, Eigen::MatrixXd>>& grids) {
  std::ofstream out = open_for_write(path);
  for (const auto& [name, w] : grids) {
    out << "# kind=" << name << " n=" << w.rows() << "\n";
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        if (j) out << ",";
        out << format_double(w(i, j));
      }
      out << "\n";
    }
  }
  if (!out) throw ValidationError("csv: write failed for '" + path + "'");
}

}  // namespace elastica
