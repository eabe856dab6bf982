#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elastica/fields.hpp"
#include "elastica/metric.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Geodesic initial/boundary value problems for the scale-invariant
// first-order metric, on the mean-zero chart. Piecewise-linear curves are
// preserved exactly by the flow, so the only numerical error is the time
// stepper's; both formulations below integrate with fixed-step RK4 (final
// step clamped so the last sample lands exactly on t_end).

// Quadratic geodesic right-hand side:
//   Gamma_c(h, h) = G_c(c, h) h - (1/2) G_c(h, h) c
//                   + D_s^{-1} pi0( <D_s c, D_s h> D_s h - (1/2)|D_s h|^2 D_s c ).
// Preconditions: c and h mean-zero.
VertexField christoffel(const Polygon& c, const VertexField& h);

// Sup-norm defect |accel - Gamma_c(velocity, velocity)|_inf.
double geodesic_residual(const Polygon& c, const VertexField& velocity,
                         const VertexField& accel);

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_stride = 1;    // store every stride-th step (plus first and last)
  double edge_guard = 1.0;  // abort when min edge < guard * degeneracy threshold
};

enum class Chart { lagrangian, hamiltonian };

struct TrajectorySample {
  double t;
  Eigen::MatrixXd vertices;
  Eigen::MatrixXd costate;  // velocity (lagrangian) or momentum (hamiltonian)
  // Diagnostics, recorded at stored samples only; monitored, never enforced.
  double energy;            // G_c(c_t, c_t)
  double length;            // ell_c
  double min_edge;
  double vertex_sum_inf;    // |sum_i c^i|_inf
  double momentum_sum_inf;  // |sum_i alpha^i|_inf
};

struct Trajectory {
  Chart chart;
  GridInfo grid;
  std::vector<TrajectorySample> samples;
  std::optional<std::string> abort_reason;  // set on early termination
  std::optional<double> abort_time;

  bool aborted() const { return abort_reason.has_value(); }
  const TrajectorySample& final_sample() const { return samples.back(); }
};

// Second-order form c_tt = Gamma_c(c_t, c_t). Aborts cleanly (reason + time
// + last good state) when an edge collapses below the guard.
Trajectory integrate_lagrangian(const Polygon& c0, const VertexField& v0,
                                const IntegratorConfig& cfg);

// First-order form c_t = K_c(alpha), alpha_t = -dH/dc. The vertex-constant
// part of alpha is conserved and does not influence the curve path.
Trajectory integrate_hamiltonian(const Polygon& c0, const Covector& a0,
                                 const IntegratorConfig& cfg);

// Endpoint of the geodesic with initial velocity h after time cfg.t_end.
Polygon exp_map(const Polygon& c, const VertexField& h, const IntegratorConfig& cfg = {});

struct ShootingConfig {
  IntegratorConfig integrator{.dt = 1e-2, .t_end = 1.0};
  int max_iterations = 100;
  double tolerance = 1e-8;  // sup-norm on endpoint vertex mismatch
  double fd_step = 1e-6;    // scaled by (1 + |h|_F) in the Jacobian
};

struct LogResult {
  VertexField initial_velocity;
  int iterations;
  double residual;  // |exp(c0, h) - c1|_inf at the returned h
};

// Damped Gauss-Newton shooting for the geodesic boundary value problem,
// initialized at pi1(c1 - c0). The Jacobian is finite-differenced over an
// orthonormal basis of the mean-zero subspace (dimension (n-1)*d).
// Throws NoConvergence after max_iterations.
LogResult log_map(const Polygon& c0, const Polygon& c1, const ShootingConfig& cfg = {});

// sqrt(G_{c0}(h, h)) with h = log_map(c0, c1).
double geodesic_distance(const Polygon& c0, const Polygon& c1, const ShootingConfig& cfg = {});

// Momentum time-series G_c(t)(c_t(t)) along a Lagrangian trajectory.
std::vector<Covector> soliton_momentum(const Trajectory& traj);

}  // namespace elastica
