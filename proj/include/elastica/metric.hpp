#pragma once

#include "elastica/fields.hpp"
#include "elastica/kernel_matrix.hpp"
#include "elastica/polygon.hpp"

namespace elastica {

// Scale-invariant first-order metric on polygons modulo translations:
//
//   G_c(h, k) = (1/ell_c) sum_i <h^{i+1} - h^i, k^{i+1} - k^i> / ell^i.
//
// Degenerate exactly on constant fields; all operations below are exact on
// polygons (no quadrature error), so identities hold to round-off.
double metric(const Polygon& c, const VertexField& h, const VertexField& k);

// Flat-map image of h: (G h)^i = (1/ell_c) (dh^{i-1}/ell^{i-1} - dh^i/ell^i)
// with dh^i = h^{i+1} - h^i. Sums to zero by telescoping and satisfies
// sum_i <(G h)^i, k^i> = G_c(h, k).
Covector momentum(const Polygon& c, const VertexField& h);

// Scalar n x n matrix of the flat map: momentum values = weights * h values.
Eigen::MatrixXd momentum_weights(const Polygon& c);

// Inverse metric on sum-zero covectors:
//
//   G^{-1}_c(a, b) = sum_{i,j} (lam^1 lam^{max(i,j)} - lam^i lam^j) <a^i, b^j>
//
// with lam the tail sums of c. Throws NotSumZero off the stated domain.
double cometric(const Polygon& c, const Covector& a, const Covector& b);

// Closed-form kernel of the extended cometric on all covectors: the scalar
// weights K(i,j) such that the Hamiltonian is (1/2) sum K(i,j) <a^i, a^j>.
// Symmetric positive semidefinite with rank (n-1)*d; annihilates covectors
// that are constant across vertices (row sums vanish identically).
Eigen::MatrixXd extended_cometric_weights(const Polygon& c);

KernelMatrix extended_cometric_matrix(const Polygon& c);

// H(c, a) = (1/2) <a, K_c a>.
double hamiltonian(const Polygon& c, const Covector& a);

// Analytic curve gradient of the Hamiltonian, O(n^2): each vertex receives
// g_{m-1} u^{m-1} - g_m u^m where g_k = dH/d ell^k and u^k are unit edges.
// Component sums vanish structurally (this conserves total momentum).
VertexField hamiltonian_gradient_c(const Polygon& c, const Covector& a);

}  // namespace elastica
