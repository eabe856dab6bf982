#pragma once

#include <Eigen/Dense>
#include <utility>

#include "elastica/fields.hpp"
#include "elastica/grid.hpp"

namespace elastica {

// Symmetric kernel operator on covectors, stored as n x n scalar weights
// W with block (i,j) = W(i,j) * I_d. Both kernels used here (the curve
// cometric and the Gaussian landmark kernel) are isotropic, so scalar
// weights capture the full block structure; dense() materializes the
// (n*d) x (n*d) expansion on demand.
class KernelMatrix {
public:
  KernelMatrix(GridInfo grid, Eigen::MatrixXd weights)
      : grid_(grid), weights_(std::move(weights)) {
    if (weights_.rows() != grid_.n || weights_.cols() != grid_.n)
      throw ValidationError("kernel matrix: weights must be n x n");
  }

  const GridInfo& grid() const { return grid_; }
  const Eigen::MatrixXd& weights() const { return weights_; }

  // Row-major vertex blocks: entry (i*d + a, j*d + b) = W(i,j) * delta_ab.
  Eigen::MatrixXd dense() const {
    const int n = grid_.n, d = grid_.d;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n * d, n * d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < d; ++a) full(i * d + a, j * d + a) = weights_(i, j);
    return full;
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& values) const { return weights_ * values; }

  VertexField apply(const Covector& a) const {
    require_same_grid(grid_, a.grid, "kernel apply");
    return VertexField(grid_, weights_ * a.values);
  }

  // <a, K b> = sum_{i,j} W(i,j) <a^i, b^j>.
  double quadratic(const Covector& a, const Covector& b) const {
    require_same_grid(grid_, a.grid, "kernel quadratic");
    require_same_grid(grid_, b.grid, "kernel quadratic");
    return (a.values.transpose() * (weights_ * b.values)).trace();
  }

private:
  GridInfo grid_;
  Eigen::MatrixXd weights_;
};

}  // namespace elastica
