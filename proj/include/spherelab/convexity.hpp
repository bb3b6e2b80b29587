#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spherelab/density.hpp"

namespace spherelab {

/// Deterministic direction grid on S^{dim-1}: uniform angles for dim == 2,
/// a Fibonacci sphere for dim == 3, and a Kronecker-lattice Gaussian map
/// for dim >= 4.  No randomness; the same (dim, count) always yields the
/// same matrix (count x dim, unit rows).
Eigen::MatrixXd direction_grid(int dim, int count);

/// Tangential second-order data of the support function H at a normal
/// direction u: the reverse Weingarten map restricted to the tangent frame,
/// whose eigenvalues are the principal radii of curvature of the boundary
/// of the induced body at the point with outward normal u.
struct ReverseWeingarten {
  Eigen::VectorXd normal;   ///< unit u
  Eigen::MatrixXd frame;    ///< n x (n-1) orthonormal tangent basis at u
  Eigen::MatrixXd matrix;   ///< frame^T Hess(H)(u) frame
  Eigen::VectorXd radii;    ///< eigenvalues, ascending
};

/// Requires f >= 0 nontrivial for a genuine body; p = 1 is routed through
/// the subsphere Hessian of T_1 f, p > 1 (not an even integer) through the
/// closed-form Hessian of (H^p)^{1/p}.  Even integer p is rejected.
ReverseWeingarten reverse_weingarten(const SphericalDensity& f, double p,
                                     const Eigen::Ref<const Eigen::VectorXd>& u,
                                     int level);

/// Gauss-Kronecker curvature 1 / prod(radii); a radius at numerical zero
/// raises the infinite-curvature flag instead of overflowing.
struct CurvatureValue {
  double value = 0.0;
  bool finite = true;
};

CurvatureValue gauss_kronecker(const Eigen::Ref<const Eigen::VectorXd>& radii);

/// The quadratic-form convexity criterion at p = 1: the integral of
/// <xi, x>^2 f(xi) over the great subsphere orthogonal to u.  Requires
/// x orthogonal to u (within 1e-10 relative).  Equals
/// <Hess(T_1 f)(u) x, x> / 2 for unit u.
double lindquist_1(const SphericalDensity& f,
                   const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& x, int level);

/// The p-extended criterion: integral of |<u, xi>|^{p-2} <x, xi>^2 f(xi)
/// over the sphere (p > 1, not an even integer).  Equals
/// <Hess(H^p)(u) x, x> / (p (p-1)).  Nonnegativity for all (u, x) makes
/// H^p, and hence H, convex.
double lindquist_p(const SphericalDensity& f, double p,
                   const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& x, int level);

/// The boundary point of the induced body with outward normal u: the
/// gradient of H at u, computed as (1/p) H^{1-p} grad(H^p).  Satisfies
/// <x, u> = H(u).
Eigen::VectorXd boundary_point(const SphericalDensity& f, double p,
                               const Eigen::Ref<const Eigen::VectorXd>& u,
                               int level);

/// Principal radii over a direction grid.  all_positive applies the scaled
/// positivity tolerance radius > 1e-6 * H(u) per direction.
struct CurvatureReport {
  double p = 0.0;
  int level = 0;
  Eigen::MatrixXd directions;             ///< M x n
  Eigen::MatrixXd radii;                  ///< M x (n-1), ascending per row
  Eigen::VectorXd support;                ///< H(u) per direction
  Eigen::VectorXd curvature;              ///< Gauss-Kronecker value
  std::vector<unsigned char> curvature_finite;
  double min_radius = 0.0;
  bool all_positive = false;
};

CurvatureReport curvature_report(const SphericalDensity& f, double p,
                                 const Eigen::Ref<const Eigen::MatrixXd>& directions,
                                 int level);

/// Grid verdict on convexity of the induced H, with the per-direction
/// minimum principal radius and the minimum of the p-criterion over
/// tangent directions (the smallest tangential eigenvalue of the
/// appropriate Hessian, scaled to the criterion's normalization).
struct ConvexityReport {
  double p = 0.0;
  int level = 0;
  Eigen::MatrixXd directions;
  bool support_positive = false;   ///< H^p > 0 across the grid
  Eigen::VectorXd support;         ///< H(u); empty if !support_positive
  Eigen::VectorXd min_radius;      ///< per direction
  Eigen::VectorXd min_criterion;   ///< per direction
  double worst_radius = 0.0;
  double worst_criterion = 0.0;
  bool convex = false;
};

ConvexityReport convexity_check(const SphericalDensity& f, double p,
                                int grid_count, int level);

/// Scaled positivity tolerance used by the verdicts: a principal radius
/// counts as positive when it exceeds this factor times H(u).
inline constexpr double kRadiusTolFactor = 1e-6;

}  // namespace spherelab
