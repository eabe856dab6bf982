#include "elastica/planar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/constants.hpp"

namespace elastica {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = clamp01(ab.dot(p - a) / ab.squaredNorm());
  return (p - (a + t * ab)).norm();
}

// Closest-approach distance of two nondegenerate segments plus the midpoint
// of the realizing pair of points.
double segment_segment_distance(const Eigen::Vector2d& p1, const Eigen::Vector2d& q1,
                                const Eigen::Vector2d& p2, const Eigen::Vector2d& q2,
                                Eigen::Vector2d& witness) {
  const Eigen::Vector2d d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm();
  const double b = d1.dot(d2), c = d1.dot(r), f = d2.dot(r);
  const double denom = a * e - b * b;

  double s = (denom > 0.0) ? clamp01((b * f - c * e) / denom) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = clamp01(-c / a);
  } else if (t > 1.0) {
    t = 1.0;
    s = clamp01((b - c) / a);
  }
  const Eigen::Vector2d c1 = p1 + s * d1, c2 = p2 + t * d2;
  witness = 0.5 * (c1 + c2);
  return (c1 - c2).norm();
}

// If both endpoints of cd lie within kGeomTol of the line through ab and the
// axis projections overlap by more than kGeomTol, report the overlap midpoint.
bool collinear_overlap(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& c, const Eigen::Vector2d& d,
                       Eigen::Vector2d& midpoint) {
  const Eigen::Vector2d u = b - a;
  const double len = u.norm();
  const Eigen::Vector2d unit = u / len;
  const auto line_dist = [&](const Eigen::Vector2d& p) {
    const Eigen::Vector2d ap = p - a;
    return std::abs(unit.x() * ap.y() - unit.y() * ap.x());
  };
  if (line_dist(c) > kGeomTol || line_dist(d) > kGeomTol) return false;
  const double sc = unit.dot(c - a), sd = unit.dot(d - a);
  const double lo = std::max(0.0, std::min(sc, sd));
  const double hi = std::min(len, std::max(sc, sd));
  if (hi - lo <= kGeomTol) return false;
  midpoint = a + 0.5 * (lo + hi) * unit;
  return true;
}

}  // namespace

WindingResult winding_number(const Polygon& c, const Eigen::Vector2d& p) {
  if (c.d() != 2) throw ValidationError("winding_number: planar polygons only");
  const int n = c.n();
  const Eigen::MatrixXd& v = c.vertices();

  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % n);
    if (point_segment_distance(p, a, b) <= kGeomTol)
      throw PointOnCurve("winding_number: point lies on edge " + std::to_string(i));
  }

  double angle = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d a = Eigen::Vector2d(v.row(i)) - p;
    const Eigen::Vector2d b = Eigen::Vector2d(v.row((i + 1) % n)) - p;
    angle += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return WindingResult{static_cast<int>(std::lround(angle / kTwoPi)), angle};
}

std::vector<EdgeIntersection> self_intersections(const Polygon& c) {
  if (c.d() != 2) throw ValidationError("self_intersections: planar polygons only");
  const int n = c.n();
  const Eigen::MatrixXd& v = c.vertices();
  std::vector<EdgeIntersection> found;

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % n);
      const Eigen::Vector2d cc = v.row(j), dd = v.row((j + 1) % n);

      Eigen::Vector2d where;
      if (collinear_overlap(a, b, cc, dd, where)) {
        found.push_back(EdgeIntersection{i, j, where});
        continue;
      }
      if (adjacent) continue;  // shared-vertex contact is not a crossing
      if (segment_segment_distance(a, b, cc, dd, where) <= kGeomTol)
        found.push_back(EdgeIntersection{i, j, where});
    }
  }
  return found;
}

}  // namespace elastica
