#pragma once

#include <Eigen/Dense>

#include <limits>

namespace spherelab {

/// A quadrature rule on (a subset of) the unit sphere S^{n-1} in R^n.
///
/// Invariants maintained by all builders:
///  - every node has unit norm (within a few ulp);
///  - all weights are strictly positive;
///  - nodes are stored in antipodally adjacent pairs: node 2i+1 is the exact
///    bitwise negation of node 2i and carries the same weight.  Together with
///    the bottom-up pairwise summation used by integrate(), this makes
///    integrate(rule, g) and integrate(rule, x -> g(-x)) bit-identical.
struct QuadratureRule {
  int dim = 0;               ///< ambient dimension n
  Eigen::MatrixXd nodes;     ///< N x n, unit rows
  Eigen::VectorXd weights;   ///< N, strictly positive
  int degree = 0;            ///< polynomial exactness degree (see builders)
};

/// Sum the entries of `terms` by bottom-up adjacent-pair reduction.
/// Deterministic for a fixed entry order; consumes the buffer.
double pairwise_sum(Eigen::VectorXd& terms);

/// Gauss-Jacobi rule: n nodes/weights for the weight (1-x)^alpha (1+x)^beta
/// on [-1, 1], alpha, beta > -1, via Golub-Welsch on the symmetric
/// tridiagonal recurrence matrix.  Nodes ascend.
void gauss_jacobi(int n, double alpha, double beta, Eigen::VectorXd& x,
                  Eigen::VectorXd& w);

/// Gauss-Legendre rule on [-1, 1] (Jacobi with alpha = beta = 0).
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

/// Surface measure of the full sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface(int dim);

/// x normalized to unit length with a canonical sign: the entry of largest
/// magnitude (lowest index on ties) is made positive.  The result is
/// bit-identical for x, -x, and 2^k x, which makes the direction-adapted
/// rule builders reproducible under those changes of argument.
Eigen::VectorXd canonical_direction(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Orthonormal basis of the hyperplane v-perp for unit v, as the first n-1
/// columns of the Householder reflection that maps e_n to -sign(v_n) v.
/// Columns are exactly orthogonal to v up to rounding.
Eigen::MatrixXd tangent_basis(const Eigen::Ref<const Eigen::VectorXd>& unit_v);

/// Full-sphere rule on S^{dim-1}.
///  - dim == 2: 2*level equally spaced angles, weight pi/level each;
///    trigonometric degree 2*level - 1.
///  - dim == 3: level-point Gauss-Legendre in the polar cosine times
///    2*level equally spaced azimuths; degree 2*level - 1.
///  - 4 <= dim <= 6: level-point Gauss-Jacobi (alpha = beta = (dim-3)/2) in
///    the last coordinate times a recursive S^{dim-2} rule; degree
///    min over factors (= 2*level - 1 at uniform level).
///  - dim > 6: deterministic equal-weight fallback, a Kronecker R_d lattice
///    pushed through Box-Muller and normalized, symmetrized; degree 1 only
///    (odd monomials integrate to exactly zero by symmetry).
QuadratureRule sphere_rule(int dim, int level);

/// Rule on the great subsphere S^{n-1} on x-perp (the carrier of the
/// spherical Radon transform at x).  Built from sphere_rule(n-1, level)
/// mapped through tangent_basis(canonical_direction(x)); for n == 2 the
/// carrier is the two unit vectors orthogonal to x with weight 1 each
/// (degree reported as "exact").  Identical bitwise for x, -x, 2x.
QuadratureRule subsphere_rule(const Eigen::Ref<const Eigen::VectorXd>& x,
                              int level);

/// Rule for integrands of the form |<u,xi>|^q g(xi) dxi over the full
/// sphere, q > -1, exact for *even* g.  The singular factor |t|^q and the
/// zonal Jacobian (1-t^2)^{(n-3)/2} are absorbed into a Gauss-Jacobi weight
/// in y = t^2 on [0,1] (alpha = (n-3)/2, beta = (q-1)/2), so the returned
/// weights integrate plain g against |<u,xi>|^q dxi:
///   integral ~= sum_i w_i g(node_i).
/// Nodes are +-sqrt(y_k) u + sqrt(1-y_k) omega_j.  Degree (in even g):
/// min(4*level - 2, subrule degree).  Identical bitwise for u, -u, 2u.
QuadratureRule weighted_axis_rule(const Eigen::Ref<const Eigen::VectorXd>& u,
                                  double q, int level);

/// Integrate g over the rule: sum of w_i g(node_i) by deterministic
/// pairwise summation.  g receives one node as a column vector.
template <class F>
double integrate(const QuadratureRule& rule, F&& g) {
  const Eigen::Index n = rule.nodes.rows();
  Eigen::VectorXd terms(n);
  Eigen::VectorXd xi(rule.dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    xi = rule.nodes.row(i).transpose();
    terms[i] = rule.weights[i] * g(xi);
  }
  return pairwise_sum(terms);
}

/// Degree sentinel for rules that integrate every function of their carrier
/// exactly (atomic carriers, e.g. the n == 2 subsphere rule).
inline constexpr int kExactDegree = std::numeric_limits<int>::max();

}  // namespace spherelab
