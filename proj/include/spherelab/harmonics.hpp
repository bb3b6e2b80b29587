#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spherelab/density.hpp"

namespace spherelab {

/// Legendre polynomial P_l(t) by the three-term recurrence.
double legendre_p(int l, double t);

/// Real spherical harmonic Y_l^m on S^2 with unit L2 norm:
///   Y_l^0    = N_{l,0} P_l(cos theta),
///   Y_l^{m}  = sqrt(2) N_{l,m} P_l^m(cos theta) cos(m phi),   m > 0,
///   Y_l^{-m} = sqrt(2) N_{l,m} P_l^m(cos theta) sin(m phi),   m > 0,
/// with N_{l,m} = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) and P_l^m carrying the
/// Condon-Shortley phase.
double real_sph_harm(int l, int m, const Eigen::Ref<const Eigen::Vector3d>& xi);

/// Coefficients of an L2 projection onto harmonics of degree <= lmax,
/// flattened as coef[l*(l+1) + m].
struct HarmonicSpectrum {
  int lmax = 0;
  Eigen::VectorXd coef;
  /// Relative L2 norm of f minus its truncated expansion (quadrature
  /// estimate; 0 when f has no mass).
  double reconstruction_error = 0.0;

  double coefficient(int l, int m) const;
};

/// Project a density on S^2 onto real harmonics of degree <= lmax using a
/// full-sphere rule of the given level.
HarmonicSpectrum project(const SphericalDensity& f, int lmax, int level);

/// Which sphere transform a multiplier estimate refers to: the cosine
/// transform (kernel |<x, xi>|) or the spherical Radon transform (average
/// over the great subsphere orthogonal to x).
enum class SphereTransform { Cosine, Radon };

struct MultiplierEstimate {
  int l = 0;
  double value = 0.0;          ///< measured eigenvalue on Y_l^0
  double diag_residual = 0.0;  ///< L2 mass of off-(l,0) projection coefficients
};

/// Measure the eigenvalue of the chosen transform on Y_l^0 (l even) by
/// applying the transform through quadrature of the stated level and
/// projecting back onto the harmonic basis.  With with_residual the
/// off-diagonal coefficient mass is measured as well (more quadrature work).
/// Throws std::invalid_argument for odd l (the transforms annihilate odd
/// harmonics, so no eigenvalue is measurable).
MultiplierEstimate transform_multiplier(SphereTransform which, int l,
                                        int level, bool with_residual = false);

/// Result of checking that the inversion factorization is l-independent on
/// S^2: applying (Laplace-Beltrami + n - 1) after the inverse Radon
/// transform inverts the cosine transform up to one constant, i.e.
///   rho_l = r_l / (t_l * (n - 1 - l (l + n - 2)))       (n = 3)
/// takes the same value for every even l.  That common value is the
/// measured inversion constant.
struct InversionCheck {
  std::vector<int> degrees;            ///< even l in [0, lmax]
  Eigen::VectorXd cosine_multipliers;  ///< t_l
  Eigen::VectorXd radon_multipliers;   ///< r_l
  Eigen::VectorXd ratios;              ///< rho_l
  double spread = 0.0;                 ///< max_l |rho_l - rho_0| / |rho_0|
  double constant = 0.0;               ///< measured inversion constant
};

InversionCheck inversion_ratio_check(int lmax, int level);

}  // namespace spherelab
