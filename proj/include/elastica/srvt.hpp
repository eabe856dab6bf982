#pragma once

#include <Eigen/Dense>

#include "elastica/fields.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Square-root-velocity chart for planar polygons. A pair (e, f) encodes the
// edge increments of a closed curve via the complex square
//
//   dc^i = (1/2) (e_i + i f_i)^2 * (2 pi / n),
//
// so edges have length (1/2)(e_i^2 + f_i^2)(2 pi / n) and closedness becomes
// the two quadratic constraints sum(e^2 - f^2) = 0 and sum(e f) = 0. The
// chart is a double cover: (e, f) and (-e, -f) map to the same polygon.
class SqrtVelocityPair {
public:
  // Validates the closedness constraints (each <= 1e-10 * sum(e^2 + f^2))
  // and pointwise immersion (min(e_i^2 + f_i^2) bounded away from zero),
  // throwing ConstraintViolation otherwise.
  SqrtVelocityPair(Eigen::VectorXd e, Eigen::VectorXd f);

  const Eigen::VectorXd& e() const { return e_; }
  const Eigen::VectorXd& f() const { return f_; }
  int n() const { return static_cast<int>(e_.size()); }
  GridInfo grid() const { return GridInfo(n(), 2); }

  // sum (e_i^2 + f_i^2) * (2 pi / n) = 2 * curve length.
  double weighted_square_sum() const;

private:
  Eigen::VectorXd e_, f_;
};

// The chart map: accumulate the squared increments and re-center. Mean-zero.
Polygon phi(const SqrtVelocityPair& s);

// Differential of phi at s in direction (de, df): edge increments
// (e + i f)(de + i df) * (2 pi / n), accumulated and re-centered. Throws
// ConstraintViolation when the direction violates the linearized closedness
// constraints sum(e de - f df) = 0, sum(e df + f de) = 0 (relative check).
VertexField phi_tangent(const SqrtVelocityPair& s, const Eigen::VectorXd& de,
                        const Eigen::VectorXd& df);

struct IsometryDefect {
  double pullback;      // G_{phi(s)}(T phi (de,df), T phi (de,df))
  double flat;          // sum (de_i^2 + df_i^2) * (2 pi / n)
  double curve_length;  // ell_c of phi(s)
};

// Both sides of the isometry comparison for the chart map, for test and
// report consumption; no tolerance is applied here.
IsometryDefect pullback_isometry_defect(const SqrtVelocityPair& s, const Eigen::VectorXd& de,
                                        const Eigen::VectorXd& df);

}  // namespace elastica
