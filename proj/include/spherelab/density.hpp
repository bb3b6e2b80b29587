#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace spherelab {

/// Exponent multi-index alpha for monomials xi^alpha and partial derivatives
/// D^alpha; one nonnegative entry per coordinate.
using MultiIndex = Eigen::VectorXi;

/// |alpha| = sum of the exponents.
int multi_order(const MultiIndex& alpha);

/// xi^alpha = prod_i xi_i^{alpha_i}.
double monomial(const Eigen::Ref<const Eigen::VectorXd>& xi,
                const MultiIndex& alpha);

/// One generator of a discrete (zonotopal) density: a unit direction with a
/// nonnegative weight.
struct Atom {
  Eigen::VectorXd direction;
  double weight = 0.0;
};

/// Named numeric parameters for preset densities (vector-valued entries are
/// allowed, e.g. a center direction or a list of harmonic terms).
using PresetParams = std::map<std::string, std::vector<double>>;

/// An even density on the unit sphere S^{dim-1}.
///
/// Kinds:
///  - Preset: a named closed-form family (see the catalogue below).
///  - Grid:   samples on the nodes of a full-sphere rule of a given level;
///            evaluation picks the nearest node.  Samples are symmetrized on
///            construction.
///  - Atoms:  a finite list of weighted unit directions (no pointwise
///            values; stored as symmetric pairs (u, w/2), (-u, w/2)).
///  - Custom: an arbitrary callable (not serializable; for tests and
///            programmatic use).
///
/// Evaluation is always even: kinds whose raw form may be asymmetric are
/// evaluated as (f(xi) + f(-xi)) / 2.
///
/// Preset catalogue:
///  - "constant"        any dim; params: value (default 1).
///  - "monomial"        any dim; params: alpha (exponents, one per coord).
///  - "harmonic"        dim 3; params: terms = flat [l, m, c] triples; the
///                      density is sum of c * Y_l^m (real, unit L2 norm).
///  - "bump"            dim 2; params: base (1), eps (0.5), m (1); the
///                      density is base + eps * cos(2 m theta).
///  - "vanishing_point" any dim; params: c (2), center (e_1); the density is
///                      max(0, 1 - c * min(|xi -+ center|^2))^2 -- a C^1
///                      nonnegative cap pair around +-center that vanishes
///                      on a band about the orthogonal equator when
///                      c >= 1/2.
///  - "cap_indicator"   any dim; params: radius (0.5, polar angle in
///                      radians), center (e_1); indicator of the symmetric
///                      cap pair |<xi, center>| >= cos(radius).
class SphericalDensity {
 public:
  enum class Kind { Preset, Grid, Atoms, Custom };

  static SphericalDensity preset(int dim, const std::string& name,
                                 const PresetParams& params = {});
  static SphericalDensity grid(int dim, int level,
                               const Eigen::VectorXd& samples);
  static SphericalDensity atoms(int dim, const std::vector<Atom>& generators);
  static SphericalDensity custom(
      int dim, std::function<double(const Eigen::VectorXd&)> fn,
      bool raw_is_even = false);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }

  /// True when the stored representation is already even (no on-the-fly
  /// symmetrization needed).
  bool evenized() const { return raw_even_; }

  /// Pointwise (symmetrized) value.  Throws for the Atoms kind.
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& xi) const;

  /// Symmetrized generator list.  Throws for non-Atoms kinds.
  const std::vector<Atom>& atom_list() const;

  // Serialization accessors (valid for the respective kinds).
  const std::string& preset_name() const { return preset_name_; }
  const PresetParams& preset_params() const { return preset_params_; }
  int grid_level() const { return grid_level_; }
  const Eigen::VectorXd& grid_samples() const { return grid_samples_; }

 private:
  SphericalDensity() = default;

  int dim_ = 0;
  Kind kind_ = Kind::Custom;
  bool raw_even_ = false;
  std::function<double(const Eigen::VectorXd&)> raw_;
  std::vector<Atom> atoms_;
  std::string preset_name_;
  PresetParams preset_params_;
  int grid_level_ = 0;
  Eigen::VectorXd grid_samples_;
  Eigen::MatrixXd grid_nodes_;
};

// Convenience factories for the preset catalogue.
SphericalDensity constant_density(int dim, double value = 1.0);
SphericalDensity monomial_density(int dim, const MultiIndex& alpha);
/// terms: (l, m, coefficient) triples, density = sum c * Y_l^m on S^2.
SphericalDensity harmonic_density(
    const std::vector<std::array<double, 3>>& terms);
SphericalDensity bump_density(double base, double eps, int m);
SphericalDensity vanishing_point_density(int dim, double c,
                                         const Eigen::VectorXd& center);
SphericalDensity cap_indicator_density(int dim, double radius,
                                       const Eigen::VectorXd& center);

}  // namespace spherelab
