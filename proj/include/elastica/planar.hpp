#pragma once

#include <Eigen/Dense>
#include <vector>

#include "elastica/polygon.hpp"

namespace elastica {

// Planar (d = 2) predicates. Both are tolerance-based with the absolute
// geometric tolerance kGeomTol: configurations that degenerate only up to
// round-off (e.g. a polygon folding exactly onto a segment) must still be
// detected, so exact sidedness predicates are deliberately not used.

struct WindingResult {
  int degree;
  double angle_sum;  // total signed angle; degree * 2 pi up to round-off
};

// Winding of the polygon around p by summation of signed turning angles.
// Throws PointOnCurve when p lies within kGeomTol of some edge.
WindingResult winding_number(const Polygon& c, const Eigen::Vector2d& p);

struct EdgeIntersection {
  int edge_a;              // < edge_b
  int edge_b;
  Eigen::Vector2d point;   // crossing point, or overlap midpoint if collinear
};

// All pairs of edges at segment-segment distance <= kGeomTol. Edges sharing
// a vertex count only when they overlap beyond the shared endpoint (reported
// with the overlap midpoint), so convex polygons report an empty list.
std::vector<EdgeIntersection> self_intersections(const Polygon& c);

}  // namespace elastica
