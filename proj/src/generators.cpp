#include "elastica/generators.hpp"

#include <cmath>

#include "elastica/constants.hpp"

namespace elastica {

DiamondState gen_diamond(double t) {
  const double s = std::sin(t), c = std::cos(t);
  Eigen::MatrixXd vertices(4, 2), velocity(4, 2), acceleration(4, 2);
  vertices << s, 0, 0, c, -s, 0, 0, -c;
  velocity << c, 0, 0, -s, -c, 0, 0, s;
  acceleration = -vertices;
  GridInfo grid(4, 2);
  return DiamondState{Polygon(grid, std::move(vertices), true),
                      VertexField(grid, std::move(velocity), true),
                      VertexField(grid, std::move(acceleration), true)};
}

Polygon gen_regular_polygon(int n, double radius) {
  if (n < 3) throw ValidationError("regular polygon: need n >= 3");
  if (!(radius > 0.0)) throw ValidationError("regular polygon: radius must be positive");
  GridInfo grid(n, 2);
  Eigen::MatrixXd vertices(n, 2);
  for (int i = 0; i < n; ++i) {
    vertices(i, 0) = radius * std::cos(grid.theta(i));
    vertices(i, 1) = radius * std::sin(grid.theta(i));
  }
  vertices.rowwise() -= vertices.colwise().mean();
  return Polygon(grid, std::move(vertices), true);
}

Eigen::RowVectorXd FourierSeries::eval(double theta) const {
  if (cos_coeffs.rows() != sin_coeffs.rows() || cos_coeffs.cols() != sin_coeffs.cols())
    throw ValidationError("fourier series: cos/sin coefficient shapes differ");
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(cos_coeffs.cols());
  for (int m = 0; m < cos_coeffs.rows(); ++m)
    v += std::cos(m * theta) * cos_coeffs.row(m) + std::sin(m * theta) * sin_coeffs.row(m);
  return v;
}

Polygon gen_fourier_curve(const FourierSeries& series, int n) {
  GridInfo grid(n, series.dimension());
  Eigen::MatrixXd vertices(n, grid.d);
  for (int i = 0; i < n; ++i) vertices.row(i) = series.eval(grid.theta(i));
  vertices.rowwise() -= vertices.colwise().mean();
  return Polygon(grid, std::move(vertices), true);
}

VertexField sample_fourier_field(const FourierSeries& series, int n, bool project_mean_zero) {
  GridInfo grid(n, series.dimension());
  Eigen::MatrixXd values(n, grid.d);
  for (int i = 0; i < n; ++i) values.row(i) = series.eval(grid.theta(i));
  if (project_mean_zero) values.rowwise() -= values.colwise().mean();
  return VertexField(grid, std::move(values), project_mean_zero);
}

}  // namespace elastica
