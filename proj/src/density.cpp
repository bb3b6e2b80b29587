#include "spherelab/density.hpp"

#include <cmath>
#include <stdexcept>

#include "spherelab/harmonics.hpp"
#include "spherelab/quadrature.hpp"

namespace spherelab {

namespace {

double get_scalar(const PresetParams& params, const std::string& key,
                  double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (it->second.size() != 1)
    throw std::invalid_argument("density preset: parameter '" + key +
                                "' must hold exactly one number");
  return it->second[0];
}

Eigen::VectorXd get_vector(const PresetParams& params, const std::string& key,
                           const Eigen::VectorXd& fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return Eigen::Map<const Eigen::VectorXd>(it->second.data(),
                                           it->second.size());
}

void check_keys(const PresetParams& params,
                std::initializer_list<const char*> allowed,
                const std::string& name) {
  for (const auto& kv : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (kv.first == a) ok = true;
    if (!ok)
      throw std::invalid_argument("density preset '" + name +
                                  "': unknown parameter '" + kv.first + "'");
  }
}

Eigen::VectorXd unit_axis(int dim, int axis) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  e[axis] = 1.0;
  return e;
}

}  // namespace

int multi_order(const MultiIndex& alpha) {
  int s = 0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0)
      throw std::invalid_argument("multi_order: exponents must be >= 0");
    s += alpha[i];
  }
  return s;
}

double monomial(const Eigen::Ref<const Eigen::VectorXd>& xi,
                const MultiIndex& alpha) {
  if (xi.size() != alpha.size())
    throw std::invalid_argument("monomial: dimension mismatch");
  double p = 1.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) p *= xi[i];
  return p;
}

SphericalDensity SphericalDensity::preset(int dim, const std::string& name,
                                          const PresetParams& params) {
  if (dim < 2)
    throw std::invalid_argument("SphericalDensity: need dim >= 2");
  SphericalDensity d;
  d.dim_ = dim;
  d.kind_ = Kind::Preset;
  d.preset_name_ = name;
  d.preset_params_ = params;

  if (name == "constant") {
    check_keys(params, {"value"}, name);
    const double value = get_scalar(params, "value", 1.0);
    d.raw_even_ = true;
    d.raw_ = [value](const Eigen::VectorXd&) { return value; };
    return d;
  }
  if (name == "monomial") {
    check_keys(params, {"alpha"}, name);
    Eigen::VectorXd a =
        get_vector(params, "alpha", Eigen::VectorXd::Zero(dim));
    if (a.size() != dim)
      throw std::invalid_argument(
          "density preset 'monomial': alpha needs one exponent per "
          "coordinate");
    MultiIndex alpha(dim);
    for (int i = 0; i < dim; ++i) {
      alpha[i] = static_cast<int>(std::lround(a[i]));
      if (alpha[i] < 0 || std::abs(a[i] - alpha[i]) > 1e-9)
        throw std::invalid_argument(
            "density preset 'monomial': exponents must be nonnegative "
            "integers");
    }
    d.raw_even_ = multi_order(alpha) % 2 == 0;
    d.raw_ = [alpha](const Eigen::VectorXd& xi) { return monomial(xi, alpha); };
    return d;
  }
  if (name == "harmonic") {
    if (dim != 3)
      throw std::invalid_argument("density preset 'harmonic': dim must be 3");
    check_keys(params, {"terms"}, name);
    auto it = params.find("terms");
    if (it == params.end() || it->second.empty() ||
        it->second.size() % 3 != 0)
      throw std::invalid_argument(
          "density preset 'harmonic': needs flat (l, m, coef) triples in "
          "'terms'");
    struct Term {
      int l, m;
      double c;
    };
    std::vector<Term> terms;
    bool all_even = true;
    for (std::size_t i = 0; i < it->second.size(); i += 3) {
      Term t;
      t.l = static_cast<int>(std::lround(it->second[i]));
      t.m = static_cast<int>(std::lround(it->second[i + 1]));
      t.c = it->second[i + 2];
      if (t.l < 0 || std::abs(t.m) > t.l)
        throw std::invalid_argument(
            "density preset 'harmonic': need l >= 0 and |m| <= l");
      if (t.l % 2 != 0) all_even = false;
      terms.push_back(t);
    }
    d.raw_even_ = all_even;
    d.raw_ = [terms](const Eigen::VectorXd& xi) {
      const Eigen::Vector3d p = xi.head<3>();
      double s = 0.0;
      for (const auto& t : terms) s += t.c * real_sph_harm(t.l, t.m, p);
      return s;
    };
    return d;
  }
  if (name == "bump") {
    if (dim != 2)
      throw std::invalid_argument("density preset 'bump': dim must be 2");
    check_keys(params, {"base", "eps", "m"}, name);
    const double base = get_scalar(params, "base", 1.0);
    const double eps = get_scalar(params, "eps", 0.5);
    const int m = static_cast<int>(std::lround(get_scalar(params, "m", 1.0)));
    if (m < 1)
      throw std::invalid_argument("density preset 'bump': need m >= 1");
    d.raw_even_ = true;
    d.raw_ = [base, eps, m](const Eigen::VectorXd& xi) {
      const double theta = std::atan2(xi[1], xi[0]);
      return base + eps * std::cos(2.0 * m * theta);
    };
    return d;
  }
  if (name == "vanishing_point") {
    check_keys(params, {"c", "center"}, name);
    const double c = get_scalar(params, "c", 2.0);
    if (c <= 0.0)
      throw std::invalid_argument("density preset 'vanishing_point': c > 0");
    Eigen::VectorXd center = get_vector(params, "center", unit_axis(dim, 0));
    if (center.size() != dim || center.norm() == 0.0)
      throw std::invalid_argument(
          "density preset 'vanishing_point': center must be a nonzero "
          "dim-vector");
    center.normalize();
    d.raw_even_ = true;
    d.raw_ = [c, center](const Eigen::VectorXd& xi) {
      // Squared chordal distance to the nearest of +-center is 2 - 2|t|.
      const double t = std::abs(center.dot(xi));
      const double v = 1.0 - c * (2.0 - 2.0 * t);
      return v > 0.0 ? v * v : 0.0;
    };
    return d;
  }
  if (name == "cap_indicator") {
    check_keys(params, {"radius", "center"}, name);
    const double radius = get_scalar(params, "radius", 0.5);
    if (radius <= 0.0 || radius >= 1.5707963267948966)
      throw std::invalid_argument(
          "density preset 'cap_indicator': radius must lie in (0, pi/2)");
    Eigen::VectorXd center = get_vector(params, "center", unit_axis(dim, 0));
    if (center.size() != dim || center.norm() == 0.0)
      throw std::invalid_argument(
          "density preset 'cap_indicator': center must be a nonzero "
          "dim-vector");
    center.normalize();
    const double cosr = std::cos(radius);
    d.raw_even_ = true;
    d.raw_ = [cosr, center](const Eigen::VectorXd& xi) {
      return std::abs(center.dot(xi)) >= cosr ? 1.0 : 0.0;
    };
    return d;
  }
  throw std::invalid_argument("SphericalDensity: unknown preset '" + name +
                              "'");
}

SphericalDensity SphericalDensity::grid(int dim, int level,
                                        const Eigen::VectorXd& samples) {
  SphericalDensity d;
  d.dim_ = dim;
  d.kind_ = Kind::Grid;
  d.grid_level_ = level;
  const QuadratureRule rule = sphere_rule(dim, level);
  if (samples.size() != rule.nodes.rows())
    throw std::invalid_argument(
        "SphericalDensity::grid: need one sample per rule node (" +
        std::to_string(rule.nodes.rows()) + ")");
  d.grid_nodes_ = rule.nodes;
  // Symmetrize over the antipodally adjacent node pairs.
  d.grid_samples_.resize(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); i += 2) {
    const double v = 0.5 * (samples[i] + samples[i + 1]);
    d.grid_samples_[i] = v;
    d.grid_samples_[i + 1] = v;
  }
  d.raw_even_ = true;
  return d;
}

SphericalDensity SphericalDensity::atoms(int dim,
                                         const std::vector<Atom>& generators) {
  SphericalDensity d;
  d.dim_ = dim;
  d.kind_ = Kind::Atoms;
  d.raw_even_ = true;
  d.atoms_.reserve(2 * generators.size());
  for (const Atom& a : generators) {
    if (a.direction.size() != dim)
      throw std::invalid_argument(
          "SphericalDensity::atoms: direction dimension mismatch");
    const double norm = a.direction.norm();
    if (!(norm > 0.0))
      throw std::invalid_argument(
          "SphericalDensity::atoms: zero direction");
    if (a.weight < 0.0)
      throw std::invalid_argument(
          "SphericalDensity::atoms: weights must be >= 0");
    Atom half;
    half.direction = a.direction / norm;
    half.weight = 0.5 * a.weight;
    d.atoms_.push_back(half);
    half.direction = -half.direction;
    d.atoms_.push_back(half);
  }
  return d;
}

SphericalDensity SphericalDensity::custom(
    int dim, std::function<double(const Eigen::VectorXd&)> fn,
    bool raw_is_even) {
  SphericalDensity d;
  d.dim_ = dim;
  d.kind_ = Kind::Custom;
  d.raw_even_ = raw_is_even;
  d.raw_ = std::move(fn);
  return d;
}

double SphericalDensity::operator()(
    const Eigen::Ref<const Eigen::VectorXd>& xi) const {
  if (xi.size() != dim_)
    throw std::invalid_argument("SphericalDensity: point dimension mismatch");
  if (kind_ == Kind::Atoms)
    throw std::domain_error(
        "SphericalDensity: the atoms kind has no pointwise values");
  if (kind_ == Kind::Grid) {
    // Nearest node by maximal inner product; samples are symmetric, so the
    // result is even regardless of which of a tie's nodes wins.
    Eigen::Index best = 0;
    double bestdot = -2.0;
    for (Eigen::Index i = 0; i < grid_nodes_.rows(); ++i) {
      const double dot = grid_nodes_.row(i) * xi;
      if (dot > bestdot) {
        bestdot = dot;
        best = i;
      }
    }
    return grid_samples_[best];
  }
  if (raw_even_) return raw_(xi);
  return 0.5 * (raw_(xi) + raw_(-xi));
}

const std::vector<Atom>& SphericalDensity::atom_list() const {
  if (kind_ != Kind::Atoms)
    throw std::domain_error("SphericalDensity: not an atoms density");
  return atoms_;
}

SphericalDensity constant_density(int dim, double value) {
  return SphericalDensity::preset(dim, "constant", {{"value", {value}}});
}

SphericalDensity monomial_density(int dim, const MultiIndex& alpha) {
  std::vector<double> a(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) a[i] = alpha[i];
  return SphericalDensity::preset(dim, "monomial", {{"alpha", a}});
}

SphericalDensity harmonic_density(
    const std::vector<std::array<double, 3>>& terms) {
  std::vector<double> flat;
  flat.reserve(terms.size() * 3);
  for (const auto& t : terms) {
    flat.push_back(t[0]);
    flat.push_back(t[1]);
    flat.push_back(t[2]);
  }
  return SphericalDensity::preset(3, "harmonic", {{"terms", flat}});
}

SphericalDensity bump_density(double base, double eps, int m) {
  return SphericalDensity::preset(
      2, "bump",
      {{"base", {base}}, {"eps", {eps}}, {"m", {static_cast<double>(m)}}});
}

SphericalDensity vanishing_point_density(int dim, double c,
                                         const Eigen::VectorXd& center) {
  std::vector<double> ctr(center.data(), center.data() + center.size());
  return SphericalDensity::preset(dim, "vanishing_point",
                                  {{"c", {c}}, {"center", ctr}});
}

SphericalDensity cap_indicator_density(int dim, double radius,
                                       const Eigen::VectorXd& center) {
  std::vector<double> ctr(center.data(), center.data() + center.size());
  return SphericalDensity::preset(dim, "cap_indicator",
                                  {{"radius", {radius}}, {"center", ctr}});
}

}  // namespace spherelab
