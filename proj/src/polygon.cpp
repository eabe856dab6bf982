#include "elastica/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/constants.hpp"

namespace elastica {

Polygon::Polygon(GridInfo grid, Eigen::MatrixXd vertices, bool require_mean_zero)
    : grid_(grid), vertices_(std::move(vertices)), mean_zero_(require_mean_zero) {
  detail::check_shape(grid_, vertices_, "polygon");
  if (!vertices_.allFinite()) throw ValidationError("polygon: non-finite vertex coordinate");

  const int n = grid_.n;
  edge_lengths_.resize(n);
  for (int i = 0; i < n; ++i)
    edge_lengths_[i] = (vertices_.row((i + 1) % n) - vertices_.row(i)).norm();
  total_length_ = edge_lengths_.sum();
  min_edge_length_ = edge_lengths_.minCoeff();

  const double guard = kEdgeGuardRel * std::max(1.0, total_length_);
  if (min_edge_length_ < guard) {
    int worst = 0;
    edge_lengths_.minCoeff(&worst);
    throw DegenerateEdge("polygon: edge " + std::to_string(worst) + " has length " +
                         std::to_string(min_edge_length_) + " < " + std::to_string(guard));
  }

  // Backward recurrences keep lambda[i] = ell[i] + lambda[i+1] exact.
  tail_sums_.resize(n);
  weighted_tail_sums_.resize(n);
  tail_sums_[n - 1] = edge_lengths_[n - 1];
  weighted_tail_sums_[n - 1] = static_cast<double>(n) * edge_lengths_[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    tail_sums_[i] = edge_lengths_[i] + tail_sums_[i + 1];
    weighted_tail_sums_[i] = (i + 1) * edge_lengths_[i] + weighted_tail_sums_[i + 1];
  }
  square_weighted_length_sum_ = 0.0;
  for (int i = 0; i < n; ++i)
    square_weighted_length_sum_ += double(i + 1) * double(i + 1) * edge_lengths_[i];

  if (require_mean_zero) {
    const double s = column_sum_inf_norm(vertices_);
    if (s > kMeanZeroTol)
      throw ValidationError("polygon: declared mean_zero but |sum|_inf = " + std::to_string(s));
  }
}

Polygon Polygon::from_vertices(Eigen::MatrixXd vertices, bool require_mean_zero) {
  GridInfo grid(static_cast<int>(vertices.rows()), static_cast<int>(vertices.cols()));
  return Polygon(grid, std::move(vertices), require_mean_zero);
}

Eigen::MatrixXd Polygon::edge_vectors() const {
  const int n = grid_.n;
  Eigen::MatrixXd e(n, grid_.d);
  for (int i = 0; i < n; ++i) e.row(i) = vertices_.row((i + 1) % n) - vertices_.row(i);
  return e;
}

Polygon Polygon::recentered() const {
  Eigen::MatrixXd v = vertices_;
  v.rowwise() -= v.colwise().mean();
  return Polygon(grid_, std::move(v), true);
}

}  // namespace elastica
