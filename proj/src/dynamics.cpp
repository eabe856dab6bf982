#include "elastica/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "elastica/constants.hpp"
#include "elastica/operators.hpp"

namespace elastica {

namespace {

// Raw-matrix Christoffel evaluation shared by the public wrapper and the
// integrator hot path (precondition checks hoisted to the entry points).
Eigen::MatrixXd christoffel_values(const Polygon& c, const Eigen::MatrixXd& hv) {
  const int n = c.n();
  const int d = c.d();
  const Eigen::MatrixXd& cv = c.vertices();
  const Eigen::VectorXd& ell = c.edge_lengths();

  Eigen::MatrixXd dc(n, d), dh(n, d);
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    dc.row(i) = (cv.row(next) - cv.row(i)) / ell[i];
    dh.row(i) = (hv.row(next) - hv.row(i)) / ell[i];
  }

  double g_ch = 0.0, g_hh = 0.0;
  for (int i = 0; i < n; ++i) {
    g_ch += dc.row(i).dot(dh.row(i)) * ell[i];
    g_hh += dh.row(i).squaredNorm() * ell[i];
  }
  g_ch /= c.total_length();
  g_hh /= c.total_length();

  // w = <D_s c, D_s h> D_s h - (1/2) |D_s h|^2 D_s c, then pi0 and D_s^{-1}.
  Eigen::MatrixXd w(n, d);
  for (int i = 0; i < n; ++i)
    w.row(i) = dc.row(i).dot(dh.row(i)) * dh.row(i) - 0.5 * dh.row(i).squaredNorm() * dc.row(i);
  const Eigen::RowVectorXd weighted_mean = (w.transpose() * ell).transpose() / c.total_length();
  w.rowwise() -= weighted_mean;

  Eigen::MatrixXd anti(n, d);
  anti.row(0).setZero();
  for (int i = 1; i < n; ++i) anti.row(i) = anti.row(i - 1) + w.row(i - 1) * ell[i - 1];
  anti.rowwise() -= anti.colwise().mean();

  return g_ch * hv - 0.5 * g_hh * cv + anti;
}

// Raw-matrix Hamiltonian gradient (same scheme as hamiltonian_gradient_c).
Eigen::MatrixXd hamiltonian_gradient_values(const Polygon& c, const Eigen::MatrixXd& av) {
  return hamiltonian_gradient_c(c, Covector(c.grid(), av)).values;
}

struct StepRates {
  Eigen::MatrixXd dv;
  Eigen::MatrixXd dq;
};

// One classical RK4 step on the paired state (V, Q).
template <class Rhs>
void rk4_step(Rhs&& rhs, double dt, Eigen::MatrixXd& v, Eigen::MatrixXd& q) {
  const StepRates k1 = rhs(v, q);
  const StepRates k2 = rhs(v + 0.5 * dt * k1.dv, q + 0.5 * dt * k1.dq);
  const StepRates k3 = rhs(v + 0.5 * dt * k2.dv, q + 0.5 * dt * k2.dq);
  const StepRates k4 = rhs(v + dt * k3.dv, q + dt * k3.dq);
  v += (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  q += (dt / 6.0) * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
}

void validate_config(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw ValidationError("integrator: dt must be positive and finite");
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
    throw ValidationError("integrator: t_end must be nonnegative and finite");
  if (cfg.sample_stride < 1) throw ValidationError("integrator: sample_stride must be >= 1");
  if (!(cfg.edge_guard >= 1.0)) throw ValidationError("integrator: edge_guard must be >= 1");
}

template <class Rhs, class Diag>
Trajectory run_rk4(Chart chart, const GridInfo& grid, Eigen::MatrixXd v, Eigen::MatrixXd q,
                   const IntegratorConfig& cfg, Rhs rhs, Diag diagnostics) {
  validate_config(cfg);
  Trajectory traj{chart, grid, {}, std::nullopt, std::nullopt};

  auto store = [&](double t, const Polygon& c, const Eigen::MatrixXd& costate) {
    if (!traj.samples.empty() && traj.samples.back().t == t) return;
    TrajectorySample s{t, c.vertices(), costate, 0, 0, 0, 0, 0};
    s.length = c.total_length();
    s.min_edge = c.min_edge_length();
    s.vertex_sum_inf = column_sum_inf_norm(c.vertices());
    diagnostics(c, costate, s);
    traj.samples.push_back(std::move(s));
  };

  Polygon start(grid, v);
  store(0.0, start, q);
  if (cfg.t_end == 0.0) return traj;

  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12)));
  double t = 0.0;
  Eigen::MatrixXd v_prev, q_prev;
  for (long k = 0; k < n_steps; ++k) {
    const double t_next = (k == n_steps - 1) ? cfg.t_end : (k + 1) * cfg.dt;
    v_prev = v;
    q_prev = q;
    try {
      rk4_step(rhs, t_next - t, v, q);
      Polygon c(grid, v);
      const double guard =
          cfg.edge_guard * kEdgeGuardRel * std::max(1.0, c.total_length());
      if (c.min_edge_length() < guard)
        throw DegenerateEdge("integrator: min edge " + std::to_string(c.min_edge_length()) +
                             " below guard " + std::to_string(guard));
      t = t_next;
      if ((k + 1) % cfg.sample_stride == 0 || k == n_steps - 1) store(t, c, q);
    } catch (const Error& e) {
      // The pre-step state is the last good one; make it the terminal sample.
      traj.abort_reason = e.what();
      traj.abort_time = t;
      v = std::move(v_prev);
      q = std::move(q_prev);
      store(t, Polygon(grid, v), q);
      break;
    }
  }
  return traj;
}

Eigen::MatrixXd momentum_values(const Polygon& c, const Eigen::MatrixXd& hv) {
  return momentum(c, VertexField(c.grid(), hv)).values;
}

}  // namespace

VertexField christoffel(const Polygon& c, const VertexField& h) {
  require_same_grid(c.grid(), h.grid, "christoffel");
  require_mean_zero_values(c.vertices(), "christoffel: curve");
  require_mean_zero_values(h.values, "christoffel: field");
  return VertexField(c.grid(), christoffel_values(c, h.values), true);
}

double geodesic_residual(const Polygon& c, const VertexField& velocity, const VertexField& accel) {
  require_same_grid(c.grid(), velocity.grid, "geodesic_residual");
  require_same_grid(c.grid(), accel.grid, "geodesic_residual");
  require_mean_zero_values(c.vertices(), "geodesic_residual: curve");
  require_mean_zero_values(velocity.values, "geodesic_residual: velocity");
  return (accel.values - christoffel_values(c, velocity.values)).cwiseAbs().maxCoeff();
}

Trajectory integrate_lagrangian(const Polygon& c0, const VertexField& v0,
                                const IntegratorConfig& cfg) {
  require_same_grid(c0.grid(), v0.grid, "integrate_lagrangian");
  require_mean_zero_values(c0.vertices(), "integrate_lagrangian: curve");
  require_mean_zero_values(v0.values, "integrate_lagrangian: velocity");
  const GridInfo grid = c0.grid();

  auto rhs = [&grid](const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) -> StepRates {
    Polygon c(grid, v);
    return {w, christoffel_values(c, w)};
  };
  auto diag = [](const Polygon& c, const Eigen::MatrixXd& w, TrajectorySample& s) {
    VertexField vel(c.grid(), w);
    s.energy = metric(c, vel, vel);
    s.momentum_sum_inf = column_sum_inf_norm(momentum_values(c, w));
  };
  return run_rk4(Chart::lagrangian, grid, c0.vertices(), v0.values, cfg, rhs, diag);
}

Trajectory integrate_hamiltonian(const Polygon& c0, const Covector& a0,
                                 const IntegratorConfig& cfg) {
  require_same_grid(c0.grid(), a0.grid, "integrate_hamiltonian");
  require_mean_zero_values(c0.vertices(), "integrate_hamiltonian: curve");
  const GridInfo grid = c0.grid();

  auto rhs = [&grid](const Eigen::MatrixXd& v, const Eigen::MatrixXd& a) -> StepRates {
    Polygon c(grid, v);
    const Eigen::MatrixXd w = extended_cometric_weights(c);
    return {w * a, -hamiltonian_gradient_values(c, a)};
  };
  auto diag = [](const Polygon& c, const Eigen::MatrixXd& a, TrajectorySample& s) {
    const Eigen::MatrixXd w = extended_cometric_weights(c);
    // G_c(c_t, c_t) with c_t = K alpha equals <alpha, K alpha>.
    s.energy = (a.transpose() * (w * a)).trace();
    s.momentum_sum_inf = column_sum_inf_norm(a);
  };
  return run_rk4(Chart::hamiltonian, grid, c0.vertices(), a0.values, cfg, rhs, diag);
}

Polygon exp_map(const Polygon& c, const VertexField& h, const IntegratorConfig& cfg) {
  IntegratorConfig endpoint_cfg = cfg;
  endpoint_cfg.sample_stride = std::numeric_limits<int>::max();
  Trajectory traj = integrate_lagrangian(c, h, endpoint_cfg);
  if (traj.aborted())
    throw DegenerateEdge("exp_map: aborted at t = " + std::to_string(*traj.abort_time) + ": " +
                         *traj.abort_reason);
  return Polygon(c.grid(), traj.final_sample().vertices);
}

namespace {

// Orthonormal basis of the sum-zero subspace of R^n (Helmert): column k has
// 1/sqrt((k+1)(k+2)) in rows 0..k and -(k+1)/sqrt((k+1)(k+2)) in row k+1.
Eigen::MatrixXd helmert_basis(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 0; k < n - 1; ++k) {
    const double denom = std::sqrt(double(k + 1) * double(k + 2));
    for (int r = 0; r <= k; ++r) b(r, k) = 1.0 / denom;
    b(k + 1, k) = -double(k + 1) / denom;
  }
  return b;
}

}  // namespace

LogResult log_map(const Polygon& c0, const Polygon& c1, const ShootingConfig& cfg) {
  require_same_grid(c0.grid(), c1.grid(), "log_map");
  require_mean_zero_values(c0.vertices(), "log_map: source");
  require_mean_zero_values(c1.vertices(), "log_map: target");
  const int n = c0.n();
  const int d = c0.d();
  const int m = (n - 1) * d;
  const Eigen::MatrixXd basis = helmert_basis(n);

  auto shoot = [&](const Eigen::MatrixXd& h) -> Eigen::MatrixXd {
    return exp_map(c0, VertexField(c0.grid(), h, true), cfg.integrator).vertices() -
           c1.vertices();
  };
  auto coords = [&](const Eigen::MatrixXd& residual) -> Eigen::VectorXd {
    // (n-1) x d coefficient block, flattened column-major.
    const Eigen::MatrixXd r = basis.transpose() * residual;
    return Eigen::Map<const Eigen::VectorXd>(r.data(), m);
  };

  Eigen::MatrixXd h = c1.vertices() - c0.vertices();
  h.rowwise() -= h.colwise().mean();

  Eigen::MatrixXd residual = shoot(h);
  double sup = residual.cwiseAbs().maxCoeff();
  int iterations = 0;
  while (sup > cfg.tolerance) {
    if (iterations >= cfg.max_iterations)
      throw NoConvergence("log_map: no convergence after " + std::to_string(iterations) +
                          " iterations, residual " + std::to_string(sup));

    const Eigen::VectorXd r0 = coords(residual);
    const double eps = cfg.fd_step * (1.0 + h.norm());
    Eigen::MatrixXd jac(m, m);
    for (int k = 0; k < n - 1; ++k)
      for (int e = 0; e < d; ++e) {
        Eigen::MatrixXd hp = h;
        hp.col(e) += eps * basis.col(k);
        jac.col(e * (n - 1) + k) = (coords(shoot(hp)) - r0) / eps;
      }

    const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(-r0);
    Eigen::MatrixXd step(n, d);
    for (int e = 0; e < d; ++e)
      step.col(e) = basis * delta.segment(e * (n - 1), n - 1);

    // Backtracking on the euclidean residual norm.
    const double r0_norm = r0.norm();
    double scale = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 12; ++bt) {
      Eigen::MatrixXd h_try = h + scale * step;
      Eigen::MatrixXd res_try;
      try {
        res_try = shoot(h_try);
      } catch (const DegenerateEdge&) {
        scale *= 0.5;  // shot left the immersed region; shorten
        continue;
      }
      if (coords(res_try).norm() < r0_norm) {
        h = std::move(h_try);
        residual = std::move(res_try);
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    ++iterations;
    if (!accepted)
      throw NoConvergence("log_map: line search stalled at residual " + std::to_string(sup));
    sup = residual.cwiseAbs().maxCoeff();
  }
  return LogResult{VertexField(c0.grid(), std::move(h), true), iterations, sup};
}

double geodesic_distance(const Polygon& c0, const Polygon& c1, const ShootingConfig& cfg) {
  const LogResult lr = log_map(c0, c1, cfg);
  return std::sqrt(metric(c0, lr.initial_velocity, lr.initial_velocity));
}

std::vector<Covector> soliton_momentum(const Trajectory& traj) {
  if (traj.chart != Chart::lagrangian)
    throw ValidationError("soliton_momentum: expects a lagrangian trajectory");
  std::vector<Covector> result;
  result.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) {
    Polygon c(traj.grid, s.vertices);
    result.push_back(momentum(c, VertexField(traj.grid, s.costate)));
  }
  return result;
}

}  // namespace elastica
