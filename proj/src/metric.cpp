#include "elastica/metric.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/constants.hpp"
#include "elastica/operators.hpp"

namespace elastica {

double metric(const Polygon& c, const VertexField& h, const VertexField& k) {
  require_same_grid(c.grid(), h.grid, "metric");
  require_same_grid(c.grid(), k.grid, "metric");
  const int n = c.n();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    acc += (h.values.row(next) - h.values.row(i))
               .dot(k.values.row(next) - k.values.row(i)) /
           c.edge_lengths()[i];
  }
  return acc / c.total_length();
}

Covector momentum(const Polygon& c, const VertexField& h) {
  require_same_grid(c.grid(), h.grid, "momentum");
  const int n = c.n();
  Eigen::MatrixXd v(n, c.d());
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    const int next = (i + 1) % n;
    const Eigen::RowVectorXd back =
        (h.values.row(i) - h.values.row(prev)) / c.edge_lengths()[prev];
    const Eigen::RowVectorXd fwd =
        (h.values.row(next) - h.values.row(i)) / c.edge_lengths()[i];
    v.row(i) = (back - fwd) / c.total_length();
  }
  return Covector(h.grid, std::move(v), true);
}

Eigen::MatrixXd momentum_weights(const Polygon& c) {
  const int n = c.n();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  // Accumulated so the wrap-around entries merge correctly for n = 2.
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    const int next = (i + 1) % n;
    const double a = 1.0 / (c.total_length() * c.edge_lengths()[prev]);
    const double b = 1.0 / (c.total_length() * c.edge_lengths()[i]);
    w(i, i) += a + b;
    w(i, prev) -= a;
    w(i, next) -= b;
  }
  return w;
}

double cometric(const Polygon& c, const Covector& a, const Covector& b) {
  require_same_grid(c.grid(), a.grid, "cometric");
  require_same_grid(c.grid(), b.grid, "cometric");
  require_sum_zero(a, "cometric");
  require_sum_zero(b, "cometric");
  const int n = c.n();
  const Eigen::VectorXd& lam = c.tail_sums();
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = lam[0] * lam[std::max(i, j)] - lam[i] * lam[j];
      acc += w * a.values.row(i).dot(b.values.row(j));
    }
  return acc;
}

Eigen::MatrixXd extended_cometric_weights(const Polygon& c) {
  const int n = c.n();
  const Eigen::VectorXd& lam = c.tail_sums();
  const Eigen::VectorXd& kap = c.weighted_tail_sums();
  const double lam1 = c.total_length();
  const double kap1 = kap[0];
  const double q = c.square_weighted_length_sum();
  const double nn = static_cast<double>(n);
  const double constant = -kap1 * kap1 / (nn * nn) + lam1 * q / (nn * nn);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = lam1 * lam[i] - lam[i] * lam[j] + (kap1 / nn) * (lam[i] + lam[j]) -
                       (lam1 / nn) * (kap[i] + kap[j]) + constant;
      w(i, j) = v;
      w(j, i) = v;
    }
  return w;
}

KernelMatrix extended_cometric_matrix(const Polygon& c) {
  return KernelMatrix(c.grid(), extended_cometric_weights(c));
}

double hamiltonian(const Polygon& c, const Covector& a) {
  require_same_grid(c.grid(), a.grid, "hamiltonian");
  const Eigen::MatrixXd w = extended_cometric_weights(c);
  return 0.5 * (a.values.transpose() * (w * a.values)).trace();
}

VertexField hamiltonian_gradient_c(const Polygon& c, const Covector& a) {
  require_same_grid(c.grid(), a.grid, "hamiltonian_gradient_c");
  const int n = c.n();
  const int d = c.d();
  const Eigen::MatrixXd& av = a.values;
  const Eigen::VectorXd& lam = c.tail_sums();
  const Eigen::VectorXd& kap = c.weighted_tail_sums();
  const double lam1 = c.total_length();
  const double kap1 = kap[0];
  const double q = c.square_weighted_length_sum();
  const double nn = static_cast<double>(n);

  // Prefix data: T_k = sum_{i<=k} a^i, A1 = sum lam^i a^i, A2 = sum kap^i a^i,
  // S0 = sum a^i, M = sum_i lam^i (|a^i|^2 + 2 <a^i, T_{i-1}>).
  Eigen::RowVectorXd s0 = Eigen::RowVectorXd::Zero(d);
  Eigen::RowVectorXd a1 = Eigen::RowVectorXd::Zero(d);
  Eigen::RowVectorXd a2 = Eigen::RowVectorXd::Zero(d);
  double m_acc = 0.0;
  Eigen::MatrixXd prefix(n, d);
  for (int i = 0; i < n; ++i) {
    m_acc += lam[i] * (av.row(i).squaredNorm() + 2.0 * av.row(i).dot(s0));
    s0 += av.row(i);
    prefix.row(i) = s0;
    a1 += lam[i] * av.row(i);
    a2 += kap[i] * av.row(i);
  }
  const double s0sq = s0.squaredNorm();
  const double a1s0 = a1.dot(s0);
  const double a2s0 = a2.dot(s0);

  // g[k] = dH/d ell^k; kk is the 1-based edge index entering kap and q.
  Eigen::VectorXd g(n);
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k + 1);
    const Eigen::RowVectorXd& tk = prefix.row(k);
    const double tks0 = tk.dot(s0);
    double v = m_acc + lam1 * tk.squaredNorm() - 2.0 * tk.dot(a1) + (2.0 * kk / nn) * a1s0 +
               (2.0 * kap1 / nn) * tks0 - (2.0 / nn) * a2s0 - (2.0 * lam1 * kk / nn) * tks0 -
               (2.0 * kap1 * kk / (nn * nn)) * s0sq + (q / (nn * nn)) * s0sq +
               (lam1 * kk * kk / (nn * nn)) * s0sq;
    g[k] = 0.5 * v;
  }

  // Chain rule through ell^k = |c^{k+1} - c^k|: vertex m picks up
  // g[m-1] u^{m-1} - g[m] u^m with u the unit edge vectors.
  Eigen::MatrixXd grad(n, d);
  for (int m = 0; m < n; ++m) {
    const int prev = (m + n - 1) % n;
    const Eigen::RowVectorXd u_prev = c.edge_vector(prev) / c.edge_lengths()[prev];
    const Eigen::RowVectorXd u_here = c.edge_vector(m) / c.edge_lengths()[m];
    grad.row(m) = g[prev] * u_prev - g[m] * u_here;
  }
  return VertexField(c.grid(), std::move(grad), true);
}

}  // namespace elastica
