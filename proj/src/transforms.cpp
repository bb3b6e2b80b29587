#include "spherelab/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "spherelab/quadrature.hpp"

namespace spherelab {

namespace {

/// Weighted sum over atoms: sum_i w_i |<u_i, x>|^p, pairwise for
/// determinism (the stored list is already symmetrized).
double atom_cosine_sum(const SphericalDensity& f, double p,
                       const Eigen::Ref<const Eigen::VectorXd>& x) {
  const auto& atoms = f.atom_list();
  Eigen::VectorXd terms(static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i)
    terms[static_cast<Eigen::Index>(i)] =
        atoms[i].weight * std::pow(std::abs(atoms[i].direction.dot(x)), p);
  return pairwise_sum(terms);
}

}  // namespace

bool TransformSpec::p_is_even_integer() const {
  const double r = std::nearbyint(p);
  return std::abs(p - r) <= 1e-9 && static_cast<long long>(r) % 2 == 0;
}

void TransformSpec::validate() const {
  if (!(p >= 1.0))
    throw std::invalid_argument("TransformSpec: need p >= 1, got " +
                                std::to_string(p));
  if (dim < 2)
    throw std::invalid_argument("TransformSpec: need dim >= 2");
  if (level < 1)
    throw std::invalid_argument("TransformSpec: need level >= 1");
}

double lp_cosine(const SphericalDensity& f, const TransformSpec& spec,
                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  spec.validate();
  if (f.dim() != spec.dim || x.size() != spec.dim)
    throw std::invalid_argument("lp_cosine: dimension mismatch");
  if (x.norm() == 0.0) return 0.0;
  if (f.kind() == SphericalDensity::Kind::Atoms)
    return atom_cosine_sum(f, spec.p, x);
  const QuadratureRule rule = sphere_rule(spec.dim, spec.level);
  const double p = spec.p;
  return integrate(rule, [&](const Eigen::VectorXd& xi) {
    return std::pow(std::abs(x.dot(xi)), p) * f(xi);
  });
}

double lp_cosine_axis(const SphericalDensity& f, const TransformSpec& spec,
                      const Eigen::Ref<const Eigen::VectorXd>& x) {
  spec.validate();
  if (f.dim() != spec.dim || x.size() != spec.dim)
    throw std::invalid_argument("lp_cosine_axis: dimension mismatch");
  const double norm = x.norm();
  if (norm == 0.0) return 0.0;
  if (f.kind() == SphericalDensity::Kind::Atoms)
    return atom_cosine_sum(f, spec.p, x);
  // |<x, xi>|^p = |x|^p |<xhat, xi>|^p; the rule's weights absorb the
  // kernel against the unit axis.
  const QuadratureRule rule = weighted_axis_rule(x, spec.p, spec.level);
  const double sum =
      integrate(rule, [&](const Eigen::VectorXd& xi) { return f(xi); });
  return std::pow(norm, spec.p) * sum;
}

double radon(const SphericalDensity& f,
             const Eigen::Ref<const Eigen::VectorXd>& x, int level) {
  if (f.dim() != x.size())
    throw std::invalid_argument("radon: dimension mismatch");
  if (f.kind() == SphericalDensity::Kind::Atoms)
    throw std::domain_error(
        "radon: undefined for atomic densities (the carrier subsphere has "
        "measure zero for point masses)");
  if (x.norm() == 0.0)
    throw std::invalid_argument("radon: direction must be nonzero");
  const QuadratureRule rule = subsphere_rule(x, level);
  return integrate(rule, [&](const Eigen::VectorXd& xi) { return f(xi); });
}

double zonotope_support(const SphericalDensity& atoms,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (atoms.kind() != SphericalDensity::Kind::Atoms)
    throw std::invalid_argument(
        "zonotope_support: requires an atoms-kind density (generator list)");
  if (atoms.dim() != x.size())
    throw std::invalid_argument("zonotope_support: dimension mismatch");
  return atom_cosine_sum(atoms, 1.0, x);
}

double support_value(const SphericalDensity& f, const TransformSpec& spec,
                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.norm() == 0.0) return 0.0;
  // The axis-adapted evaluator absorbs the |<x, xi>|^p kernel into the rule
  // weights (and sums atoms exactly), so the power is far more accurate than
  // a plain product rule of the same level.
  const double hp = lp_cosine_axis(f, spec, x);
  if (!(hp > 0.0))
    throw std::domain_error(
        "support_value: H^p(x) = " + std::to_string(hp) +
        " is not positive; the density does not induce a support function "
        "at this point");
  return std::pow(hp, 1.0 / spec.p);
}

}  // namespace spherelab
