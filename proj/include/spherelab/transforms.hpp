#pragma once

#include <Eigen/Dense>

#include "spherelab/density.hpp"

namespace spherelab {

/// Parameters of an L^p-cosine transform evaluation: the exponent p >= 1,
/// the ambient dimension, and the quadrature level.
struct TransformSpec {
  double p = 1.0;
  int dim = 3;
  int level = 32;

  /// p an even integer (within 1e-9): the transform itself is defined, but
  /// the closed-form derivative constants degenerate and injectivity on
  /// even densities is lost, so derivative paths reject such p.
  bool p_is_even_integer() const;

  /// Throws std::invalid_argument unless p >= 1, dim >= 2, level >= 1.
  void validate() const;
};

/// H^p(x) = integral of |<x, xi>|^p f(xi) over the sphere, evaluated with
/// the full-sphere rule of spec.level (atoms kind: exact weighted sum).
/// Homogeneous of degree p; returns 0 at x = 0.
double lp_cosine(const SphericalDensity& f, const TransformSpec& spec,
                 const Eigen::Ref<const Eigen::VectorXd>& x);

/// Same integral as lp_cosine, evaluated with the weighted axis rule
/// aligned to x.  Exact (to rounding) for band-limited densities at any p,
/// where the plain sphere rule carries an O(level^-2) kink error for
/// non-even-integer p; preferred as a baseline when differentiating in x.
double lp_cosine_axis(const SphericalDensity& f, const TransformSpec& spec,
                      const Eigen::Ref<const Eigen::VectorXd>& x);

/// Spherical Radon transform: the integral of f over the great subsphere
/// orthogonal to x (for dim == 2: f(v) + f(-v) for the two unit v
/// orthogonal to x).  Requires nonzero x and a pointwise-evaluable kind.
double radon(const SphericalDensity& f, const Eigen::Ref<const Eigen::VectorXd>& x,
             int level);

/// Support function of the zonotope generated by an atoms density:
/// h(x) = sum_i w_i |<u_i, x>| (the p = 1 cosine transform of the atoms).
double zonotope_support(const SphericalDensity& atoms,
                        const Eigen::Ref<const Eigen::VectorXd>& x);

/// Support value H(x) = (H^p(x))^{1/p} of the convex body induced by f; the
/// p-th root of lp_cosine.  Throws std::domain_error when H^p(x) <= 0
/// (signed densities can leave the support-function regime).
double support_value(const SphericalDensity& f, const TransformSpec& spec,
                     const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace spherelab
