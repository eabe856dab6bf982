#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "elastica/grid.hpp"

namespace elastica {

// |sum over rows|_inf: largest component magnitude of the columnwise sum.
inline double column_sum_inf_norm(const Eigen::MatrixXd& values) {
  if (values.size() == 0) return 0.0;
  return values.colwise().sum().cwiseAbs().maxCoeff();
}

namespace detail {
inline void check_shape(const GridInfo& grid, const Eigen::MatrixXd& values, const char* what) {
  if (values.rows() != grid.n || values.cols() != grid.d)
    throw ValidationError(std::string(what) + ": values must be " + std::to_string(grid.n) + "x" +
                          std::to_string(grid.d) + ", got " + std::to_string(values.rows()) + "x" +
                          std::to_string(values.cols()));
}
}  // namespace detail

// Tangent data: one vector per vertex. The mean_zero flag is a declaration
// (set structurally by producers like pi1); validate_flags re-checks it.
struct VertexField {
  GridInfo grid;
  Eigen::MatrixXd values;  // n x d, row i = value at vertex i
  bool mean_zero;

  VertexField(GridInfo g, Eigen::MatrixXd v, bool mean_zero_flag = false)
      : grid(g), values(std::move(v)), mean_zero(mean_zero_flag) {
    detail::check_shape(grid, values, "vertex field");
  }

  void validate_flags(double tol = kMeanZeroTol) const {
    if (mean_zero && column_sum_inf_norm(values) > tol)
      throw ValidationError("vertex field: declared mean_zero but |sum|_inf = " +
                            std::to_string(column_sum_inf_norm(values)));
  }
};

// Edge data: one vector per edge (piecewise-constant between vertices).
struct EdgeField {
  GridInfo grid;
  Eigen::MatrixXd values;  // n x d, row i = value on edge i

  EdgeField(GridInfo g, Eigen::MatrixXd v) : grid(g), values(std::move(v)) {
    detail::check_shape(grid, values, "edge field");
  }
};

// Dual data paired against vertex fields by sum_i <a^i, h^i>.
struct Covector {
  GridInfo grid;
  Eigen::MatrixXd values;  // n x d, row i = component against vertex i
  bool sum_zero;

  Covector(GridInfo g, Eigen::MatrixXd v, bool sum_zero_flag = false)
      : grid(g), values(std::move(v)), sum_zero(sum_zero_flag) {
    detail::check_shape(grid, values, "covector");
  }

  void validate_flags(double tol = kMeanZeroTol) const {
    if (sum_zero && column_sum_inf_norm(values) > tol)
      throw ValidationError("covector: declared sum_zero but |sum|_inf = " +
                            std::to_string(column_sum_inf_norm(values)));
  }
};

inline double pairing(const Covector& a, const VertexField& h) {
  require_same_grid(a.grid, h.grid, "pairing");
  return (a.values.array() * h.values.array()).sum();
}

}  // namespace elastica
