#include "elastica/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/constants.hpp"

namespace elastica {

namespace {
double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
}  // namespace

void require_ds_mean_zero(const Polygon& c, const EdgeField& k, const char* where) {
  const Eigen::RowVectorXd weighted = k.values.transpose() * c.edge_lengths();
  const double defect = weighted.cwiseAbs().maxCoeff();
  const double tol = kMeanZeroTol * c.total_length() * std::max(1.0, max_abs(k.values));
  if (defect > tol)
    throw NotDsMeanZero(std::string(where) + ": |sum k^i ell^i|_inf = " + std::to_string(defect) +
                        " exceeds " + std::to_string(tol));
}

void require_sum_zero(const Covector& a, const char* where) {
  const double defect = column_sum_inf_norm(a.values);
  const double tol = kMeanZeroTol * std::max(1.0, max_abs(a.values));
  if (defect > tol)
    throw NotSumZero(std::string(where) + ": |sum a^i|_inf = " + std::to_string(defect) +
                     " exceeds " + std::to_string(tol));
}

void require_mean_zero_values(const Eigen::MatrixXd& values, const char* where) {
  const double defect = column_sum_inf_norm(values);
  const double tol = kMeanZeroTol * std::max(1.0, max_abs(values));
  if (defect > tol)
    throw ValidationError(std::string(where) + ": |sum|_inf = " + std::to_string(defect) +
                          " exceeds mean-zero tolerance " + std::to_string(tol));
}

VertexField pi1(const VertexField& h) {
  Eigen::MatrixXd v = h.values;
  v.rowwise() -= h.values.colwise().mean();
  return VertexField(h.grid, std::move(v), true);
}

EdgeField pi0(const Polygon& c, const EdgeField& k) {
  require_same_grid(c.grid(), k.grid, "pi0");
  const Eigen::RowVectorXd weighted_mean =
      (k.values.transpose() * c.edge_lengths()).transpose() / c.total_length();
  Eigen::MatrixXd v = k.values;
  v.rowwise() -= weighted_mean;
  return EdgeField(k.grid, std::move(v));
}

EdgeField ds_derivative(const Polygon& c, const VertexField& h) {
  require_same_grid(c.grid(), h.grid, "ds_derivative");
  const int n = c.n();
  Eigen::MatrixXd v(n, c.d());
  for (int i = 0; i < n; ++i)
    v.row(i) = (h.values.row((i + 1) % n) - h.values.row(i)) / c.edge_lengths()[i];
  return EdgeField(h.grid, std::move(v));
}

VertexField ds_antiderivative(const Polygon& c, const EdgeField& k) {
  require_same_grid(c.grid(), k.grid, "ds_antiderivative");
  require_ds_mean_zero(c, k, "ds_antiderivative");
  const int n = c.n();
  // prefix[i] = sum_{j<i} k^j ell^j, then subtract the vertex mean.
  Eigen::MatrixXd prefix(n, c.d());
  prefix.row(0).setZero();
  for (int i = 1; i < n; ++i)
    prefix.row(i) = prefix.row(i - 1) + k.values.row(i - 1) * c.edge_lengths()[i - 1];
  prefix.rowwise() -= prefix.colwise().mean();
  return VertexField(k.grid, std::move(prefix), true);
}

Covector mul_ds(const Polygon& c, const EdgeField& k) {
  require_same_grid(c.grid(), k.grid, "mul_ds");
  Eigen::MatrixXd v = c.edge_lengths().asDiagonal() * k.values;
  const double defect = column_sum_inf_norm(v);
  const bool sum_zero =
      defect <= kMeanZeroTol * c.total_length() * std::max(1.0, max_abs(k.values));
  return Covector(k.grid, std::move(v), sum_zero);
}

EdgeField div_ds(const Polygon& c, const Covector& b) {
  require_same_grid(c.grid(), b.grid, "div_ds");
  Eigen::MatrixXd v = c.edge_lengths().cwiseInverse().asDiagonal() * b.values;
  return EdgeField(b.grid, std::move(v));
}

Covector ds_adjoint(const Polygon& c, const Covector& b) {
  require_same_grid(c.grid(), b.grid, "ds_adjoint");
  const int n = c.n();
  Eigen::MatrixXd v(n, c.d());
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    v.row(i) = b.values.row(prev) / c.edge_lengths()[prev] - b.values.row(i) / c.edge_lengths()[i];
  }
  return Covector(b.grid, std::move(v), true);
}

Covector ds_adjoint_inverse(const Polygon& c, const Covector& a) {
  require_same_grid(c.grid(), a.grid, "ds_adjoint_inverse");
  require_sum_zero(a, "ds_adjoint_inverse");
  const int n = c.n();
  const Eigen::RowVectorXd shift =
      (a.values.transpose() * c.tail_sums()).transpose() / c.total_length();
  Eigen::MatrixXd v(n, c.d());
  Eigen::RowVectorXd prefix = Eigen::RowVectorXd::Zero(c.d());
  for (int i = 0; i < n; ++i) {
    prefix += a.values.row(i);  // inclusive prefix sum_{j<=i} a^j
    v.row(i) = (shift - prefix) * c.edge_lengths()[i];
  }
  return Covector(a.grid, std::move(v), true);
}

}  // namespace elastica
