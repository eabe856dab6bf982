#pragma once

#include <Eigen/Dense>

#include "elastica/fields.hpp"
#include "elastica/grid.hpp"

namespace elastica {

// Closed polygon with n >= 2 pairwise-distinct consecutive vertices in R^d.
// Immutable; derived edge quantities are computed once at construction:
//
//   ell[i]    = |c^{i+1} - c^i|                 (edge lengths, indices mod n)
//   lambda[i] = sum_{j>=i} ell[j]               (tail sums, lambda[0] = total)
//   kappa[i]  = sum_{j>=i} (j+1) ell[j]         (index-weighted tail sums)
//
// The (j+1) weight is the 1-based edge index; kappa and the companion scalar
// sum_{j} (j+1)^2 ell[j] feed the closed-form cometric kernel.
class Polygon {
public:
  // Throws DegenerateEdge if any edge is shorter than
  // kEdgeGuardRel * max(1, total length). With require_mean_zero, also
  // checks |sum_i c^i|_inf <= kMeanZeroTol.
  Polygon(GridInfo grid, Eigen::MatrixXd vertices, bool require_mean_zero = false);

  static Polygon from_vertices(Eigen::MatrixXd vertices, bool require_mean_zero = false);

  const GridInfo& grid() const { return grid_; }
  int n() const { return grid_.n; }
  int d() const { return grid_.d; }

  const Eigen::MatrixXd& vertices() const { return vertices_; }
  const Eigen::VectorXd& edge_lengths() const { return edge_lengths_; }
  const Eigen::VectorXd& tail_sums() const { return tail_sums_; }
  const Eigen::VectorXd& weighted_tail_sums() const { return weighted_tail_sums_; }

  double total_length() const { return total_length_; }
  // sum_j (j+1)^2 ell[j], 1-based edge indices.
  double square_weighted_length_sum() const { return square_weighted_length_sum_; }
  double min_edge_length() const { return min_edge_length_; }
  bool mean_zero() const { return mean_zero_; }

  Eigen::RowVectorXd edge_vector(int i) const {
    return vertices_.row((i + 1) % grid_.n) - vertices_.row(i);
  }
  // All edge vectors stacked, row i = c^{i+1} - c^i.
  Eigen::MatrixXd edge_vectors() const;

  // Copy with the vertex mean subtracted (explicit re-projection; the
  // constructor never re-centers silently).
  Polygon recentered() const;

  VertexField as_vertex_field() const { return VertexField(grid_, vertices_, mean_zero_); }

private:
  GridInfo grid_;
  Eigen::MatrixXd vertices_;
  Eigen::VectorXd edge_lengths_;
  Eigen::VectorXd tail_sums_;
  Eigen::VectorXd weighted_tail_sums_;
  double total_length_;
  double square_weighted_length_sum_;
  double min_edge_length_;
  bool mean_zero_;
};

}  // namespace elastica
