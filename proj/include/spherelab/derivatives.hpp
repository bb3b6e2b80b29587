#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

#include "spherelab/density.hpp"

namespace spherelab {

/// Central finite difference D^alpha fn(x) built from tensor-product 1-D
/// stencils (orders 1..4 per coordinate, |alpha| <= 4 total) with one
/// Richardson extrapolation step, (4 A(h/2) - A(h)) / 3, giving O(h^4)
/// truncation.  h <= 0 selects eps^{1/(|alpha|+2)} * max(1, |x|).
/// Throws std::invalid_argument on empty alpha or |alpha| > 4 and
/// std::domain_error when an explicit h underflows the rounding floor.
double finite_diff(const std::function<double(const Eigen::VectorXd&)>& fn,
                   const MultiIndex& alpha,
                   const Eigen::Ref<const Eigen::VectorXd>& x, double h = 0.0);

/// D^alpha of the support function H = T_{2k+1} f of an odd-exponent cosine
/// transform, |alpha| = 2k + 2, via the closed form
///   D^alpha H(x) = C_{2k+1} (-1)^{k+1} / |x| * integral over the great
///                  subsphere orthogonal to x of xi^alpha f(xi).
/// Homogeneous of degree -1 in x.  Requires a pointwise-evaluable density,
/// x != 0, k >= 0.
double analytic_deriv_odd(const SphericalDensity& f, int k,
                          const MultiIndex& alpha,
                          const Eigen::Ref<const Eigen::VectorXd>& x,
                          int level);

/// D^alpha of H^p (the p-th power of the transform, i.e. the transform
/// integral itself) for p > 1 not an even integer and even |alpha| < p + 1:
///   D^alpha H^p(x) = (-1)^{|alpha|/2} (C_p / C_{p-|alpha|}) *
///                    integral |<x, xi>|^{p-|alpha|} xi^alpha f(xi) dxi.
/// Homogeneous of degree p - |alpha|.  At odd integer p with
/// |alpha| = p + 1 use analytic_deriv_odd instead (this routine throws a
/// redirecting error there).
double analytic_deriv_frac(const SphericalDensity& f, double p,
                           const MultiIndex& alpha,
                           const Eigen::Ref<const Eigen::VectorXd>& x,
                           int level);

/// Gradient of H^p at u:
///   (grad H^p)_i = p * integral |<u, xi>|^{p-2} <u, xi> xi_i f(xi) dxi.
/// For p > 1 this is evaluated with a weighted axis rule and is exact for
/// band-limited f; for p = 1 the sign kernel makes the reduced integrand
/// non-polynomial and convergence is algebraic in the level (documented
/// accuracy note).  Satisfies the Euler identity <grad, u> = p H^p(u).
Eigen::VectorXd grad_Hp(const SphericalDensity& f, double p,
                        const Eigen::Ref<const Eigen::VectorXd>& u, int level);

/// Hessian of H^p at u for p > 1 (not an even integer; odd integers are
/// consistent):
///   Hess(H^p)_ij = p (p-1) * integral |<u, xi>|^{p-2} xi_i xi_j f dxi.
Eigen::MatrixXd hessian_Hp(const SphericalDensity& f, double p,
                           const Eigen::Ref<const Eigen::VectorXd>& u,
                           int level);

/// Hessian of H = T_1 f itself at p = 1:
///   Hess(H)_ij(u) = (2 / |u|) * integral over the great subsphere
///                   orthogonal to u of xi_i xi_j f(xi) dxi.
/// Annihilates u (the radial direction) analytically.
Eigen::MatrixXd hessian_H_p1(const SphericalDensity& f,
                             const Eigen::Ref<const Eigen::VectorXd>& u,
                             int level);

/// Hessian of the support function H = (H^p)^{1/p} for p > 1, assembled
/// from the closed forms:
///   Hess(H) = (1 / (p H^{p-1})) [Hess(H^p)
///             - ((p-1)/p) (grad H^p)(grad H^p)^T / H^p].
/// Throws std::domain_error when H^p(u) <= 0.
Eigen::MatrixXd hessian_H(const SphericalDensity& f, double p,
                          const Eigen::Ref<const Eigen::VectorXd>& u,
                          int level);

/// Second-derivative bundle at a point, for reporting and cross-checks.
struct HessianReport {
  Eigen::VectorXd point;
  double p = 0.0;
  double value_Hp = 0.0;          ///< H^p(u)
  Eigen::VectorXd gradient_Hp;
  Eigen::MatrixXd hessian_Hp;
  Eigen::MatrixXd hessian_H;      ///< of the p-th root
  std::string method;             ///< "analytic" or "finite-difference"
  /// |<grad, u> - p H^p| / max(1, |p H^p|): the Euler identity defect.
  double euler_defect = 0.0;
};

/// Assemble the report analytically (weighted axis rules) or by finite
/// differences of the axis-rule transform evaluation (method =
/// "finite-difference"), for cross-validation.
HessianReport hessian_report(const SphericalDensity& f, double p,
                             const Eigen::Ref<const Eigen::VectorXd>& u,
                             int level,
                             const std::string& method = "analytic");

}  // namespace spherelab
