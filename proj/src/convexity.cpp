#include "spherelab/convexity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spherelab/derivatives.hpp"
#include "spherelab/quadrature.hpp"
#include "spherelab/transforms.hpp"

namespace spherelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool even_integer(double p) {
  const double r = std::nearbyint(p);
  return std::abs(p - r) <= 1e-9 && static_cast<long long>(r) % 2 == 0;
}

/// Support H(u) through the axis-adapted evaluation (throws when the power
/// is not positive).
double support_axis(const SphericalDensity& f, double p,
                    const Eigen::Ref<const Eigen::VectorXd>& u, int level) {
  TransformSpec spec{p, static_cast<int>(u.size()), level};
  const double hp = lp_cosine_axis(f, spec, u);
  if (!(hp > 0.0))
    throw std::domain_error(
        "support: H^p(u) = " + std::to_string(hp) +
        " is not positive; no support function at this direction");
  return std::pow(hp, 1.0 / p);
}

}  // namespace

Eigen::MatrixXd direction_grid(int dim, int count) {
  if (dim < 2) throw std::invalid_argument("direction_grid: need dim >= 2");
  if (count < 1) throw std::invalid_argument("direction_grid: need count >= 1");
  Eigen::MatrixXd dirs(count, dim);
  if (dim == 2) {
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * kPi * j / count;
      dirs(j, 0) = std::cos(theta);
      dirs(j, 1) = std::sin(theta);
    }
    return dirs;
  }
  if (dim == 3) {
    // Fibonacci sphere: evenly sheared latitudes against the golden angle.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double frac = i / golden;
      frac -= std::floor(frac);
      const double phi = 2.0 * kPi * frac;
      dirs(i, 0) = r * std::cos(phi);
      dirs(i, 1) = r * std::sin(phi);
      dirs(i, 2) = z;
    }
    return dirs;
  }
  // dim >= 4: Kronecker lattice mapped to Gaussians, normalized.
  const int d = 2 * ((dim + 1) / 2);
  double phi = 1.5;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
  Eigen::VectorXd alpha(d), u(d), z(d);
  for (int j = 0; j < d; ++j) {
    double a = std::pow(1.0 / phi, j + 1);
    alpha[j] = a - std::floor(a);
  }
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < d; ++j) {
      double v = 0.5 + (i + 1.0) * alpha[j];
      v -= std::floor(v);
      u[j] = std::min(std::max(v, 1e-16), 1.0 - 1e-16);
    }
    for (int j = 0; j < d; j += 2) {
      const double r = std::sqrt(-2.0 * std::log(u[j]));
      z[j] = r * std::cos(2.0 * kPi * u[j + 1]);
      z[j + 1] = r * std::sin(2.0 * kPi * u[j + 1]);
    }
    Eigen::VectorXd node = z.head(dim);
    const double norm = node.norm();
    if (norm > 1e-8)
      node /= norm;
    else
      node = Eigen::VectorXd::Unit(dim, 0);
    dirs.row(i) = node.transpose();
  }
  return dirs;
}

ReverseWeingarten reverse_weingarten(const SphericalDensity& f, double p,
                                     const Eigen::Ref<const Eigen::VectorXd>& u,
                                     int level) {
  if (!(p >= 1.0))
    throw std::invalid_argument("reverse_weingarten: need p >= 1");
  if (even_integer(p))
    throw std::invalid_argument(
        "reverse_weingarten: p must not be an even integer (second "
        "derivatives of the support power have no closed form there)");
  const double norm = u.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("reverse_weingarten: u must be nonzero");

  ReverseWeingarten rw;
  rw.normal = u / norm;
  const Eigen::VectorXd canon = canonical_direction(u);
  rw.frame = tangent_basis(canon);
  const Eigen::MatrixXd hess =
      (std::abs(p - 1.0) <= 1e-9) ? hessian_H_p1(f, rw.normal, level)
                                  : hessian_H(f, p, rw.normal, level);
  rw.matrix = rw.frame.transpose() * hess * rw.frame;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rw.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("reverse_weingarten: eigensolve failed");
  rw.radii = es.eigenvalues();
  return rw;
}

CurvatureValue gauss_kronecker(
    const Eigen::Ref<const Eigen::VectorXd>& radii) {
  if (radii.size() == 0)
    throw std::invalid_argument("gauss_kronecker: empty radii");
  const double scale = std::max(1.0, radii.cwiseAbs().maxCoeff());
  CurvatureValue cv;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (std::abs(radii[i]) <= 1e-12 * scale) {
      cv.finite = false;
      cv.value = std::numeric_limits<double>::infinity();
      return cv;
    }
    prod *= radii[i];
  }
  cv.value = 1.0 / prod;
  return cv;
}

double lindquist_1(const SphericalDensity& f,
                   const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& x, int level) {
  if (f.dim() != u.size() || u.size() != x.size())
    throw std::invalid_argument("lindquist_1: dimension mismatch");
  const double un = u.norm(), xn = x.norm();
  if (!(un > 0.0) || !(xn > 0.0))
    throw std::invalid_argument("lindquist_1: u and x must be nonzero");
  if (std::abs(u.dot(x)) > 1e-10 * un * xn)
    throw std::invalid_argument(
        "lindquist_1: the p = 1 criterion requires x orthogonal to u "
        "(within 1e-10)");
  const QuadratureRule rule = subsphere_rule(u, level);
  return integrate(rule, [&](const Eigen::VectorXd& xi) {
    const double d = xi.dot(x);
    return d * d * f(xi);
  });
}

double lindquist_p(const SphericalDensity& f, double p,
                   const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& x, int level) {
  if (f.dim() != u.size() || u.size() != x.size())
    throw std::invalid_argument("lindquist_p: dimension mismatch");
  if (!(p > 1.0))
    throw std::invalid_argument(
        "lindquist_p: needs p > 1 (use lindquist_1 at p = 1)");
  if (even_integer(p))
    throw std::invalid_argument(
        "lindquist_p: p must not be an even integer");
  const double un = u.norm();
  if (!(un > 0.0))
    throw std::invalid_argument("lindquist_p: u must be nonzero");
  const QuadratureRule rule = weighted_axis_rule(u, p - 2.0, level);
  const double unitval = integrate(rule, [&](const Eigen::VectorXd& xi) {
    const double d = xi.dot(x);
    return d * d * f(xi);
  });
  return std::pow(un, p - 2.0) * unitval;
}

Eigen::VectorXd boundary_point(const SphericalDensity& f, double p,
                               const Eigen::Ref<const Eigen::VectorXd>& u,
                               int level) {
  if (!(p >= 1.0)) throw std::invalid_argument("boundary_point: need p >= 1");
  TransformSpec spec{p, static_cast<int>(u.size()), level};
  const double hp = lp_cosine_axis(f, spec, u);
  if (!(hp > 0.0))
    throw std::domain_error(
        "boundary_point: H^p(u) is not positive; the density does not "
        "induce a body boundary here");
  // grad H = (1/p) (H^p)^{(1-p)/p} grad H^p.
  return std::pow(hp, (1.0 - p) / p) / p * grad_Hp(f, p, u, level);
}

CurvatureReport curvature_report(
    const SphericalDensity& f, double p,
    const Eigen::Ref<const Eigen::MatrixXd>& directions, int level) {
  const Eigen::Index m = directions.rows();
  const int n = static_cast<int>(directions.cols());
  if (f.dim() != n)
    throw std::invalid_argument("curvature_report: dimension mismatch");
  CurvatureReport rep;
  rep.p = p;
  rep.level = level;
  rep.directions = directions;
  rep.radii.resize(m, n - 1);
  rep.support.resize(m);
  rep.curvature.resize(m);
  rep.curvature_finite.assign(m, 1);
  rep.min_radius = std::numeric_limits<double>::infinity();
  rep.all_positive = true;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd u = directions.row(i).transpose();
    const ReverseWeingarten rw = reverse_weingarten(f, p, u, level);
    rep.radii.row(i) = rw.radii.transpose();
    rep.support[i] = support_axis(f, p, u, level);
    const CurvatureValue cv = gauss_kronecker(rw.radii);
    rep.curvature[i] = cv.value;
    rep.curvature_finite[i] = cv.finite ? 1 : 0;
    rep.min_radius = std::min(rep.min_radius, rw.radii.minCoeff());
    if (!(rw.radii.minCoeff() > kRadiusTolFactor * rep.support[i]))
      rep.all_positive = false;
  }
  return rep;
}

ConvexityReport convexity_check(const SphericalDensity& f, double p,
                                int grid_count, int level) {
  ConvexityReport rep;
  rep.p = p;
  rep.level = level;
  rep.directions = direction_grid(f.dim(), grid_count);
  const Eigen::Index m = rep.directions.rows();
  const int n = f.dim();

  // First pass: the support power must stay positive for H to be a support
  // function at all.
  TransformSpec spec{p, n, level};
  rep.support.resize(m);
  rep.support_positive = true;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double hp =
        lp_cosine_axis(f, spec, rep.directions.row(i).transpose());
    if (!(hp > 0.0)) {
      rep.support_positive = false;
      rep.support.resize(0);
      break;
    }
    rep.support[i] = std::pow(hp, 1.0 / p);
  }
  if (!rep.support_positive) {
    rep.convex = false;
    return rep;
  }

  rep.min_radius.resize(m);
  rep.min_criterion.resize(m);
  const bool p1 = std::abs(p - 1.0) <= 1e-9;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd u = rep.directions.row(i).transpose();
    const ReverseWeingarten rw = reverse_weingarten(f, p, u, level);
    rep.min_radius[i] = rw.radii.minCoeff();
    if (p1) {
      // Smallest tangential eigenvalue of Hess(T_1 f)/2 = the minimum of
      // the p = 1 criterion over unit tangent directions.
      rep.min_criterion[i] = 0.5 * rw.radii.minCoeff();
    } else {
      const Eigen::MatrixXd hp_t =
          rw.frame.transpose() * hessian_Hp(f, p, u, level) * rw.frame;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hp_t);
      rep.min_criterion[i] = es.eigenvalues().minCoeff() / (p * (p - 1.0));
    }
  }
  rep.worst_radius = rep.min_radius.minCoeff();
  rep.worst_criterion = rep.min_criterion.minCoeff();
  rep.convex = true;
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(rep.min_radius[i] > kRadiusTolFactor * rep.support[i]))
      rep.convex = false;
  return rep;
}

}  // namespace spherelab
