#include "elastica/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elastica/constants.hpp"
#include "elastica/metric.hpp"

namespace elastica {

namespace {

double configuration_diameter(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  double diam = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      diam = std::max(diam, (points.row(i) - points.row(j)).norm());
  return diam;
}

double min_pair_distance(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      best = std::min(best, (points.row(i) - points.row(j)).norm());
  return best;
}

Eigen::MatrixXd gaussian_weights(const Eigen::MatrixXd& points, double sigma) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = 1.0;
    for (int j = 0; j < i; ++j) {
      const double r2 = (points.row(i) - points.row(j)).squaredNorm();
      const double v = std::exp(-r2 / (2.0 * sigma * sigma));
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return w;
}

}  // namespace

LandmarkConfig::LandmarkConfig(Eigen::MatrixXd points, double sigma)
    : points_(std::move(points)), sigma_(sigma) {
  if (points_.rows() < 1 || points_.cols() < 1)
    throw ValidationError("landmarks: empty configuration");
  if (!points_.allFinite()) throw ValidationError("landmarks: non-finite coordinate");
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
    throw ValidationError("landmarks: sigma must be positive");
  if (points_.rows() > 1) {
    const double guard = kLandmarkGuardRel * configuration_diameter(points_);
    const double closest = min_pair_distance(points_);
    if (closest <= guard)
      throw DegenerateLandmarks("landmarks: closest pair at distance " +
                                std::to_string(closest) + " <= guard " + std::to_string(guard));
  }
}

KernelMatrix lddmm_kernel_matrix(const LandmarkConfig& q) {
  return KernelMatrix(q.grid(), gaussian_weights(q.points(), q.sigma()));
}

Eigen::MatrixXd elastic_kernel_weights(const LandmarkConfig& q) {
  return extended_cometric_weights(Polygon(q.grid(), q.points()));
}

double lddmm_hamiltonian(const Eigen::MatrixXd& points, const Eigen::MatrixXd& momenta,
                         double sigma) {
  const Eigen::MatrixXd w = gaussian_weights(points, sigma);
  return 0.5 * (momenta.transpose() * (w * momenta)).trace();
}

Eigen::MatrixXd lddmm_hamiltonian_gradient_q(const Eigen::MatrixXd& points,
                                             const Eigen::MatrixXd& momenta, double sigma) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  const double inv_s2 = 1.0 / (sigma * sigma);
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::RowVectorXd diff = points.row(i) - points.row(j);
      const double k = std::exp(-diff.squaredNorm() * 0.5 * inv_s2);
      // d/dq^i of exp(-|q^i-q^j|^2/(2s^2)) <p^i,p^j>, both orderings of (i,j).
      grad.row(i) -= inv_s2 * k * momenta.row(i).dot(momenta.row(j)) * diff;
    }
  return grad;
}

LandmarkTrajectory lddmm_hamiltonian_flow(const LandmarkConfig& q0, const Eigen::MatrixXd& p0,
                                          const LandmarkFlowConfig& cfg) {
  if (p0.rows() != q0.n() || p0.cols() != q0.d())
    throw ValidationError("lddmm flow: momenta shape mismatch");
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= 0.0) || cfg.sample_stride < 1)
    throw ValidationError("lddmm flow: bad config");
  const double sigma = q0.sigma();
  const double guard =
      q0.n() > 1 ? kLandmarkGuardRel * configuration_diameter(q0.points()) : 0.0;

  LandmarkTrajectory traj;
  auto store = [&](double t, const Eigen::MatrixXd& q, const Eigen::MatrixXd& p) {
    if (!traj.samples.empty() && traj.samples.back().t == t) return;
    traj.samples.push_back(LandmarkSample{t, q, p, lddmm_hamiltonian(q, p, sigma),
                                          q.rows() > 1 ? min_pair_distance(q)
                                                       : std::numeric_limits<double>::infinity(),
                                          column_sum_inf_norm(p)});
  };

  Eigen::MatrixXd q = q0.points();
  Eigen::MatrixXd p = p0;
  store(0.0, q, p);
  if (cfg.t_end == 0.0) return traj;

  auto rhs = [&](const Eigen::MatrixXd& qq, const Eigen::MatrixXd& pp, Eigen::MatrixXd& dq,
                 Eigen::MatrixXd& dp) {
    dq = gaussian_weights(qq, sigma) * pp;
    dp = -lddmm_hamiltonian_gradient_q(qq, pp, sigma);
  };

  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12)));
  double t = 0.0;
  Eigen::MatrixXd k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
  for (long k = 0; k < n_steps; ++k) {
    const double t_next = (k == n_steps - 1) ? cfg.t_end : (k + 1) * cfg.dt;
    const double dt = t_next - t;
    rhs(q, p, k1q, k1p);
    rhs(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p, k2q, k2p);
    rhs(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p, k3q, k3p);
    rhs(q + dt * k3q, p + dt * k3p, k4q, k4p);
    const Eigen::MatrixXd q_next = q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    const Eigen::MatrixXd p_next = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (q.rows() > 1 && min_pair_distance(q_next) <= guard) {
      traj.abort_reason = "lddmm flow: landmark pair within degeneracy guard " +
                          std::to_string(guard);
      traj.abort_time = t;
      store(t, q, p);
      break;
    }
    q = q_next;
    p = p_next;
    t = t_next;
    if ((k + 1) % cfg.sample_stride == 0 || k == n_steps - 1) store(t, q, p);
  }
  return traj;
}

}  // namespace elastica
