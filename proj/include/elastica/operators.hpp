#pragma once

#include "elastica/fields.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Discrete first-order calculus on closed polygons. Vertex fields are
// piecewise-linear data, edge fields piecewise-constant, covectors dual to
// vertex fields under the plain euclidean pairing. All indices mod n.

// Projection onto mean-zero vertex fields: h^i - (1/n) sum_j h^j.
VertexField pi1(const VertexField& h);

// Projection onto ds-mean-zero edge fields: k^i - (1/ell_c) sum_j k^j ell^j.
EdgeField pi0(const Polygon& c, const EdgeField& k);

// Arclength derivative (D_s h)^i = (h^{i+1} - h^i) / ell^i.
EdgeField ds_derivative(const Polygon& c, const VertexField& h);

// Mean-zero antiderivative of a ds-mean-zero edge field; inverts
// ds_derivative up to pi1. Throws NotDsMeanZero when
// |sum_j k^j ell^j|_inf > kMeanZeroTol * ell_c * max(1, |k|_inf).
VertexField ds_antiderivative(const Polygon& c, const EdgeField& k);

// Multiplication by the arclength measure: edge data k -> covector k^i ell^i.
// The result is flagged sum-zero when the input is ds-mean-zero.
Covector mul_ds(const Polygon& c, const EdgeField& k);

// Division by the arclength measure: covector b -> edge data b^i / ell^i.
EdgeField div_ds(const Polygon& c, const Covector& b);

// Adjoint of the arclength derivative: (D_s^* b)^i = b^{i-1}/ell^{i-1} - b^i/ell^i.
// The result sums to zero by telescoping.
Covector ds_adjoint(const Polygon& c, const Covector& b);

// Inverse of ds_adjoint on sum-zero covectors:
// ((D_s^*)^{-1} a)^i = ((1/ell_c) sum_j a^j lambda^j - sum_{j<=i} a^j) ell^i.
// Throws NotSumZero when |sum a|_inf > kMeanZeroTol * max(1, |a|_inf).
Covector ds_adjoint_inverse(const Polygon& c, const Covector& a);

// Guard helpers shared by operators and solvers.
void require_ds_mean_zero(const Polygon& c, const EdgeField& k, const char* where);
void require_sum_zero(const Covector& a, const char* where);
void require_mean_zero_values(const Eigen::MatrixXd& values, const char* where);

}  // namespace elastica
