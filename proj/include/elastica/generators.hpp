#pragma once

#include <Eigen/Dense>

#include "elastica/fields.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Reference configurations used by the CLI and the test suites.

struct DiamondState {
  Polygon curve;
  VertexField velocity;
  VertexField acceleration;
};

// Four-vertex family c(t) = {(sin t, 0), (0, cos t), (-sin t, 0), (0, -cos t)}
// with velocity c'(t) and acceleration c''(t) = -c(t). All edges have unit
// length for every t, the family is mean-zero by symmetry, and it solves the
// geodesic equation exactly.
DiamondState gen_diamond(double t);

// n >= 3 vertices of radius r on a circle, re-centered; d = 2.
Polygon gen_regular_polygon(int n, double radius = 1.0);

// Trigonometric curve data: value(theta) = sum_m cos(m theta) * cos_row(m)
//                                        + sum_m sin(m theta) * sin_row(m).
// Row m of each matrix holds the R^d coefficient of harmonic m >= 0.
struct FourierSeries {
  Eigen::MatrixXd cos_coeffs;  // (M+1) x d
  Eigen::MatrixXd sin_coeffs;  // (M+1) x d

  Eigen::RowVectorXd eval(double theta) const;
  int dimension() const { return static_cast<int>(cos_coeffs.cols()); }
};

// Sample the series on the uniform n-grid and re-center. Throws
// DegenerateEdge if sampling produces a degenerate polygon.
Polygon gen_fourier_curve(const FourierSeries& series, int n);

// Same sampling for tangent data (mean-subtracted when project_mean_zero).
VertexField sample_fourier_field(const FourierSeries& series, int n, bool project_mean_zero);

}  // namespace elastica
