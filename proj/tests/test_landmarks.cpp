#include <doctest.h>

#include <Eigen/Dense>

#include "elastica/landmarks.hpp"
#include "elastica/metric.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {

Eigen::MatrixXd spread_points(std::mt19937_64& gen, int n, int d, double min_gap) {
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  while (true) {
    Eigen::MatrixXd q(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) q(i, j) = box(gen);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) gap = std::min(gap, (q.row(i) - q.row(j)).norm());
    if (gap >= min_gap) return q;
  }
}

}  // namespace

TEST_CASE("gaussian kernel weights on frozen configurations") {
  Eigen::MatrixXd q(2, 2);
  q << 0, 0, 3, 4;  // distance 5
  KernelMatrix k = lddmm_kernel_matrix(LandmarkConfig(q, 1.0));
  CHECK(k.weights()(0, 0) == 1.0);
  CHECK(k.weights()(1, 1) == 1.0);
  CHECK(k.weights()(0, 1) == doctest::Approx(std::exp(-12.5)).epsilon(1e-13));
  CHECK(k.weights()(1, 0) == k.weights()(0, 1));

  // widening sigma flattens the kernel toward 1
  KernelMatrix wide = lddmm_kernel_matrix(LandmarkConfig(q, 100.0));
  CHECK(wide.weights()(0, 1) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("gaussian kernel is positive definite on random configurations") {
  auto gen = oracles::rng(401);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + int(gen() % 14);
    const int d = 2 + int(gen() % 3);
    Eigen::MatrixXd q = spread_points(gen, n, d, 0.05);
    KernelMatrix k = lddmm_kernel_matrix(LandmarkConfig(q, 0.8));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.weights());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("elastic weights for landmarks delegate to the curve kernel") {
  auto gen = oracles::rng(402);
  Eigen::MatrixXd q = spread_points(gen, 6, 2, 0.2);
  LandmarkConfig cfg(q);
  Eigen::MatrixXd through_landmarks = elastic_kernel_weights(cfg);
  Eigen::MatrixXd through_curve = extended_cometric_weights(Polygon(GridInfo(6, 2), q));
  CHECK((through_landmarks - through_curve).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel locality: ambient vs connectivity coupling") {
  // Same edge structure, different far-field: entries of the gaussian kernel
  // respond to ambient proximity, the curve kernel only to edge lengths.
  Eigen::MatrixXd square(4, 2), rhombus(4, 2);
  square << 0, 0, 1, 0, 1, 1, 0, 1;
  const double h = std::sqrt(3.0) / 2.0;
  rhombus << 0, 0, 1, 0, 1.5, h, 0.5, h;  // unit edges, vertices 0-2 pulled closer

  Eigen::MatrixXd es = elastic_kernel_weights(LandmarkConfig(square));
  Eigen::MatrixXd er = elastic_kernel_weights(LandmarkConfig(rhombus));
  CHECK((es - er).cwiseAbs().maxCoeff() < 1e-12 * es.cwiseAbs().maxCoeff());

  Eigen::MatrixXd gs = lddmm_kernel_matrix(LandmarkConfig(square)).weights();
  Eigen::MatrixXd gr = lddmm_kernel_matrix(LandmarkConfig(rhombus)).weights();
  CHECK(std::abs(gs(0, 2) - gr(0, 2)) > 0.1);
}

TEST_CASE("degenerate landmark configurations are rejected") {
  Eigen::MatrixXd q(3, 2);
  q << 0, 0, 0, 0, 1, 1;
  CHECK_THROWS_AS(LandmarkConfig{q}, DegenerateLandmarks);

  Eigen::MatrixXd ok(2, 2);
  ok << 0, 0, 1, 0;
  CHECK_THROWS_AS(LandmarkConfig(ok, 0.0), ValidationError);
  CHECK_THROWS_AS(LandmarkConfig(ok, -1.0), ValidationError);
}

TEST_CASE("hamiltonian gradient matches central differences") {
  auto gen = oracles::rng(403);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + int(gen() % 8);
    const int d = 2 + int(gen() % 2);
    const double sigma = 0.5 + 0.25 * double(gen() % 5);
    Eigen::MatrixXd q = spread_points(gen, n, d, 0.1);
    Eigen::MatrixXd p = oracles::random_matrix(gen, n, d, 1.0);

    Eigen::MatrixXd grad = lddmm_hamiltonian_gradient_q(q, p, sigma);
    auto h_of = [&](const Eigen::MatrixXd& pos) { return lddmm_hamiltonian(pos, p, sigma); };
    Eigen::MatrixXd fd = oracles::central_difference_gradient(h_of, q, 1e-6);
    CHECK((grad - fd).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, fd.cwiseAbs().maxCoeff()));

    // translating all momenta by a constant changes H but moving all points
    // together does not, so gradient rows must sum to zero.
    CHECK(column_sum_inf_norm(grad) < 1e-12 * std::max(1.0, grad.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("single landmark travels in a straight line") {
  Eigen::MatrixXd q(1, 2), p(1, 2);
  q << 0.5, -0.25;
  p << 0.3, 0.4;
  LandmarkTrajectory traj =
      lddmm_hamiltonian_flow(LandmarkConfig(q, 1.0), p, {.dt = 1e-2, .t_end = 1.0});
  REQUIRE(!traj.aborted());
  CHECK((traj.final_sample().points - (q + p)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((traj.final_sample().momenta - p).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(traj.final_sample().hamiltonian == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("zero momentum is a fixed point") {
  auto gen = oracles::rng(404);
  Eigen::MatrixXd q = spread_points(gen, 5, 2, 0.2);
  LandmarkTrajectory traj = lddmm_hamiltonian_flow(
      LandmarkConfig(q, 0.7), Eigen::MatrixXd::Zero(5, 2), {.dt = 1e-2, .t_end = 1.0});
  REQUIRE(!traj.aborted());
  CHECK((traj.final_sample().points - q).cwiseAbs().maxCoeff() == 0.0);
  CHECK(traj.final_sample().momenta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("head-on collision keeps a positive separation") {
  Eigen::MatrixXd q(2, 2), p(2, 2);
  q << -1, 0, 1, 0;
  p << 1, 0, -1, 0;
  LandmarkTrajectory traj =
      lddmm_hamiltonian_flow(LandmarkConfig(q, 1.0), p, {.dt = 1e-3, .t_end = 1.0});
  REQUIRE(!traj.aborted());

  double min_dist = std::numeric_limits<double>::infinity();
  for (const LandmarkSample& s : traj.samples) min_dist = std::min(min_dist, s.min_pair_distance);
  CHECK(min_dist > 1e-3);
  CHECK(min_dist < 2.0);  // they do approach

  const double h0 = traj.samples.front().hamiltonian;
  for (const LandmarkSample& s : traj.samples) {
    CHECK(std::abs(s.hamiltonian - h0) < 1e-10);
    CHECK(s.momentum_sum_inf < 1e-12);  // opposite momenta stay balanced
  }

  // mirror symmetry of the configuration is preserved
  const Eigen::MatrixXd& end = traj.final_sample().points;
  CHECK((end.row(0) + end.row(1)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("hamiltonian is conserved on random flows") {
  auto gen = oracles::rng(405);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 3 + int(gen() % 6);
    Eigen::MatrixXd q = spread_points(gen, n, 2, 0.3);
    Eigen::MatrixXd p = oracles::random_matrix(gen, n, 2, 0.8);
    LandmarkTrajectory traj =
        lddmm_hamiltonian_flow(LandmarkConfig(q, 1.0), p, {.dt = 1e-3, .t_end = 1.0});
    REQUIRE(!traj.aborted());
    const double h0 = traj.samples.front().hamiltonian;
    for (const LandmarkSample& s : traj.samples)
      CHECK(std::abs(s.hamiltonian - h0) < 1e-9 * std::max(1.0, std::abs(h0)));
  }
}

TEST_CASE("flows are equivariant under translation") {
  auto gen = oracles::rng(406);
  Eigen::MatrixXd q = spread_points(gen, 4, 2, 0.3);
  Eigen::MatrixXd p = oracles::random_matrix(gen, 4, 2, 0.6);
  LandmarkFlowConfig cfg{.dt = 1e-2, .t_end = 0.8};

  LandmarkTrajectory base = lddmm_hamiltonian_flow(LandmarkConfig(q, 0.9), p, cfg);
  Eigen::MatrixXd moved = q;
  moved.rowwise() += Eigen::RowVector2d(5.0, -2.0);
  LandmarkTrajectory shifted = lddmm_hamiltonian_flow(LandmarkConfig(moved, 0.9), p, cfg);
  REQUIRE(!base.aborted());
  REQUIRE(!shifted.aborted());

  Eigen::MatrixXd expect = base.final_sample().points;
  expect.rowwise() += Eigen::RowVector2d(5.0, -2.0);
  CHECK((shifted.final_sample().points - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((shifted.final_sample().momenta - base.final_sample().momenta).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("flow aborts when landmarks cross the proximity guard") {
  // Nearly touching pair plus a far spectator to fix the diameter; a tiny
  // sigma decouples the dynamics so the pair approaches at constant speed,
  // and the step width is chosen to land inside the guarded window.
  Eigen::MatrixXd q(3, 2), p(3, 2);
  q << 0, 0, 1e-7, 0, 2, 0;
  p << 1e-3, 0, -1e-3, 0, 0, 0;
  LandmarkConfig cfg(q, 1e-8);
  LandmarkTrajectory traj = lddmm_hamiltonian_flow(cfg, p, {.dt = 4.5e-5, .t_end = 1.0});
  REQUIRE(traj.aborted());
  CHECK(traj.abort_reason->find("landmark") != std::string::npos);
  CHECK(*traj.abort_time < 1e-3);
  // terminal sample is the pre-step state, still outside the guard
  CHECK(traj.final_sample().min_pair_distance >= 2.0 * kLandmarkGuardRel);
}

TEST_CASE("flow configuration is validated") {
  Eigen::MatrixXd q(2, 2), p(2, 2);
  q << 0, 0, 1, 0;
  p.setZero();
  LandmarkConfig cfg(q);
  CHECK_THROWS_AS(lddmm_hamiltonian_flow(cfg, p, {.dt = 0.0}), ValidationError);
  CHECK_THROWS_AS(lddmm_hamiltonian_flow(cfg, p, {.t_end = -1.0}), ValidationError);
  CHECK_THROWS_AS(lddmm_hamiltonian_flow(cfg, Eigen::MatrixXd::Zero(3, 2), {}), ValidationError);
}
