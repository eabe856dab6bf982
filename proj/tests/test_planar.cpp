#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "elastica/generators.hpp"
#include "elastica/planar.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {

std::vector<std::pair<int, int>> pair_list(const std::vector<EdgeIntersection>& xs) {
  std::vector<std::pair<int, int>> out;
  for (const EdgeIntersection& x : xs) out.emplace_back(x.edge_a, x.edge_b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("winding numbers around interior and exterior points") {
  DiamondState s = gen_diamond(0.6);
  WindingResult inside = winding_number(s.curve, Eigen::Vector2d(0.0, 0.0));
  CHECK(inside.degree == 1);
  CHECK(inside.angle_sum == doctest::Approx(kTwoPi).epsilon(1e-12));

  WindingResult outside = winding_number(s.curve, Eigen::Vector2d(5.0, 5.0));
  CHECK(outside.degree == 0);
  CHECK(std::abs(outside.angle_sum) < 1e-12);

  // clockwise traversal flips the sign
  Eigen::MatrixXd rev(4, 2);
  for (int i = 0; i < 4; ++i) rev.row(i) = s.curve.vertices().row((4 - i) % 4);
  WindingResult cw = winding_number(Polygon(GridInfo(4, 2), std::move(rev)),
                                    Eigen::Vector2d(0.0, 0.0));
  CHECK(cw.degree == -1);
}

TEST_CASE("doubly traversed polygons report degree two") {
  Eigen::MatrixXd v(12, 2);
  for (int i = 0; i < 12; ++i) {
    const double t = 2.0 * kTwoPi * i / 12.0;  // two full turns in twelve steps
    v(i, 0) = std::cos(t);
    v(i, 1) = std::sin(t);
  }
  WindingResult r = winding_number(Polygon(GridInfo(12, 2), std::move(v)),
                                   Eigen::Vector2d(0.1, 0.0));
  CHECK(r.degree == 2);
}

TEST_CASE("points on the curve are rejected") {
  DiamondState s = gen_diamond(0.6);
  // a vertex
  Eigen::Vector2d vertex = s.curve.vertices().row(0);
  CHECK_THROWS_AS(winding_number(s.curve, vertex), PointOnCurve);
  // an edge midpoint
  Eigen::Vector2d mid = 0.5 * (s.curve.vertices().row(0) + s.curve.vertices().row(1));
  CHECK_THROWS_AS(winding_number(s.curve, mid), PointOnCurve);
  // a point within tolerance of an edge
  Eigen::Vector2d near = mid + Eigen::Vector2d(1e-14, 1e-14);
  CHECK_THROWS_AS(winding_number(s.curve, near), PointOnCurve);
}

TEST_CASE("planar predicates require two dimensions") {
  auto gen = oracles::rng(601);
  Polygon c3 = oracles::random_polygon(gen, 5, 3);
  CHECK_THROWS_AS(winding_number(c3, Eigen::Vector2d(0, 0)), ValidationError);
  CHECK_THROWS_AS(self_intersections(c3), ValidationError);
}

TEST_CASE("convex polygons have no self intersections") {
  CHECK(self_intersections(gen_regular_polygon(17)).empty());
  CHECK(self_intersections(gen_diamond(0.7).curve).empty());
  CHECK(self_intersections(gen_diamond(kTwoPi / 8.0).curve).empty());
}

TEST_CASE("bowtie quadrilateral crosses once") {
  Eigen::MatrixXd v(4, 2);
  v << 0, 0, 1, 1, 1, 0, 0, 1;
  std::vector<EdgeIntersection> xs = self_intersections(Polygon(GridInfo(4, 2), std::move(v)));
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].edge_a == 0);
  CHECK(xs[0].edge_b == 2);
  CHECK((xs[0].point - Eigen::Vector2d(0.5, 0.5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fully folded diamond reports its overlap structure") {
  // at parameter 0 the family degenerates onto a segment traversed twice
  DiamondState s = gen_diamond(0.0);
  std::vector<EdgeIntersection> xs = self_intersections(s.curve);
  CHECK(pair_list(xs) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  for (const EdgeIntersection& x : xs) {
    if (x.edge_a == 0 && x.edge_b == 1)
      CHECK((x.point - Eigen::Vector2d(0.0, 0.5)).cwiseAbs().maxCoeff() < 1e-12);
    if (x.edge_a == 2 && x.edge_b == 3)
      CHECK((x.point - Eigen::Vector2d(0.0, -0.5)).cwiseAbs().maxCoeff() < 1e-12);
  }

  // at a quarter turn the fold lies along the horizontal axis
  DiamondState q = gen_diamond(kTwoPi / 4.0);
  CHECK(pair_list(self_intersections(q.curve)) ==
        std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

TEST_CASE("partial collinear overlap is reported with its midpoint") {
  Eigen::MatrixXd v(6, 2);
  v << -2, 1, -1, 0, 3, 0, 2.8, 1, 2, 0, 1, 0;
  std::vector<EdgeIntersection> xs = self_intersections(Polygon(GridInfo(6, 2), std::move(v)));
  REQUIRE(pair_list(xs) == std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {1, 5}});
  for (const EdgeIntersection& x : xs) {
    if (x.edge_b == 3) CHECK((x.point - Eigen::Vector2d(2.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
    if (x.edge_b == 4) CHECK((x.point - Eigen::Vector2d(1.5, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
    if (x.edge_b == 5) CHECK((x.point - Eigen::Vector2d(1.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("adjacent edges folding back overlap beyond the shared vertex") {
  // spike: edge 1 doubles back along edge 0 for half its span
  Eigen::MatrixXd v(4, 2);
  v << 0, 0, 2, 0, 1, 0, 1, 2;
  std::vector<EdgeIntersection> xs = self_intersections(Polygon(GridInfo(4, 2), std::move(v)));
  // e0 [0,2] and e1 [1,2] overlap on [1,2]; e0 and e2 touch at (1,0)
  REQUIRE(pair_list(xs) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  for (const EdgeIntersection& x : xs) {
    if (x.edge_b == 1)
      CHECK((x.point - Eigen::Vector2d(1.5, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
    if (x.edge_b == 2)
      CHECK((x.point - Eigen::Vector2d(1.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("diamond generator produces the exact trigonometric family") {
  const double t = 0.37;
  DiamondState s = gen_diamond(t);
  Eigen::MatrixXd expected(4, 2);
  expected << std::sin(t), 0, 0, std::cos(t), -std::sin(t), 0, 0, -std::cos(t);
  CHECK((s.curve.vertices() - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.curve.mean_zero());
  CHECK(s.velocity.mean_zero);
  for (int i = 0; i < 4; ++i) CHECK(s.curve.edge_lengths()[i] == doctest::Approx(1.0));
  CHECK((s.acceleration.values + s.curve.vertices()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("regular polygon generator") {
  Polygon c = gen_regular_polygon(7, 2.5);
  CHECK(c.n() == 7);
  CHECK(c.mean_zero());
  const double expected_edge = 2.0 * 2.5 * std::sin(kTwoPi / 14.0);
  for (int i = 0; i < 7; ++i)
    CHECK(c.edge_lengths()[i] == doctest::Approx(expected_edge).epsilon(1e-12));
  CHECK_THROWS_AS(gen_regular_polygon(2), ValidationError);
  CHECK_THROWS_AS(gen_regular_polygon(5, 0.0), ValidationError);
  CHECK_THROWS_AS(gen_regular_polygon(5, -1.0), ValidationError);
}

TEST_CASE("fourier sampling reproduces the circle generator") {
  FourierSeries series{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
  series.cos_coeffs(1, 0) = 2.5;
  series.sin_coeffs(1, 1) = 2.5;
  Polygon sampled = gen_fourier_curve(series, 7);
  Polygon direct = gen_regular_polygon(7, 2.5);
  CHECK((sampled.vertices() - direct.vertices()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("polygonal length converges to the smooth length at second order") {
  FourierSeries series{Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(3, 2)};
  series.cos_coeffs(1, 0) = 1.0;
  series.sin_coeffs(1, 1) = 0.6;
  series.cos_coeffs(2, 1) = 0.15;
  series.sin_coeffs(2, 0) = 0.1;

  const double reference = gen_fourier_curve(series, 8192).total_length();
  const double e64 = reference - gen_fourier_curve(series, 64).total_length();
  const double e128 = reference - gen_fourier_curve(series, 128).total_length();
  const double e256 = reference - gen_fourier_curve(series, 256).total_length();
  CHECK(e64 > 0.0);
  const double order1 = std::log2(e64 / e128);
  const double order2 = std::log2(e128 / e256);
  CHECK(order1 > 1.9);
  CHECK(order2 > 1.9);
  CHECK(order1 < 2.1);
}

TEST_CASE("fourier field sampling and mean projection") {
  FourierSeries series{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
  series.cos_coeffs(0, 0) = 1.0;  // constant drift
  series.cos_coeffs(1, 1) = 0.5;

  VertexField raw = sample_fourier_field(series, 12, false);
  CHECK(!raw.mean_zero);
  CHECK(std::abs(raw.values.col(0).mean() - 1.0) < 1e-13);

  VertexField centered = sample_fourier_field(series, 12, true);
  CHECK(centered.mean_zero);
  CHECK(column_sum_inf_norm(centered.values) < 1e-12);
}

TEST_CASE("degenerate fourier curves are rejected") {
  FourierSeries constant{Eigen::MatrixXd::Zero(1, 2), Eigen::MatrixXd::Zero(1, 2)};
  constant.cos_coeffs(0, 0) = 1.0;
  CHECK_THROWS_AS(gen_fourier_curve(constant, 8), DegenerateEdge);
}
