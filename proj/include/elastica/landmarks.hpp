#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elastica/kernel_matrix.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Point-landmark dynamics under a Gaussian reproducing kernel, kept next to
// the curve metric so the two kernel structures can be compared on the same
// configurations: the Gaussian kernel couples landmarks by ambient distance,
// while the curve kernel couples them only through consecutive edge lengths.

struct LandmarkConfig {
  // Throws DegenerateLandmarks when two landmarks are closer than
  // kLandmarkGuardRel * configuration diameter, and ValidationError for a
  // non-positive sigma.
  LandmarkConfig(Eigen::MatrixXd points, double sigma = 1.0);

  const Eigen::MatrixXd& points() const { return points_; }
  double sigma() const { return sigma_; }
  int n() const { return static_cast<int>(points_.rows()); }
  int d() const { return static_cast<int>(points_.cols()); }
  GridInfo grid() const { return GridInfo(n(), d()); }

private:
  Eigen::MatrixXd points_;
  double sigma_;
};

// Gaussian kernel weights w(i,j) = exp(-|q^i - q^j|^2 / (2 sigma^2)),
// blocks w(i,j) * I_d. Symmetric positive definite; unit diagonal.
KernelMatrix lddmm_kernel_matrix(const LandmarkConfig& q);

// Curve-metric kernel weights for the polygon through the same points
// (consecutive-distinct is enough; handled by the Polygon guard).
Eigen::MatrixXd elastic_kernel_weights(const LandmarkConfig& q);

struct LandmarkSample {
  double t;
  Eigen::MatrixXd points;
  Eigen::MatrixXd momenta;
  double hamiltonian;        // (1/2) sum k(q^i,q^j) <p^i,p^j>
  double min_pair_distance;  // over all landmark pairs
  double momentum_sum_inf;   // |sum_i p^i|_inf
};

struct LandmarkTrajectory {
  std::vector<LandmarkSample> samples;
  std::optional<std::string> abort_reason;
  std::optional<double> abort_time;

  bool aborted() const { return abort_reason.has_value(); }
  const LandmarkSample& final_sample() const { return samples.back(); }
};

double lddmm_hamiltonian(const Eigen::MatrixXd& points, const Eigen::MatrixXd& momenta,
                         double sigma);

// Analytic dH/dq (the flow uses -dH/dq; validated against central FD).
Eigen::MatrixXd lddmm_hamiltonian_gradient_q(const Eigen::MatrixXd& points,
                                             const Eigen::MatrixXd& momenta, double sigma);

struct LandmarkFlowConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_stride = 1;
};

// Hamiltonian point-vortex-style flow q_t = K p, p_t = -dH/dq with fixed-step
// RK4 (final step clamped). Aborts cleanly when two landmarks come closer
// than the degeneracy guard fixed from the initial configuration.
LandmarkTrajectory lddmm_hamiltonian_flow(const LandmarkConfig& q0, const Eigen::MatrixXd& p0,
                                          const LandmarkFlowConfig& cfg = {});

}  // namespace elastica
