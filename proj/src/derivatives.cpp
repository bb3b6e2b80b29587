#include "spherelab/derivatives.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spherelab/quadrature.hpp"
#include "spherelab/specfun.hpp"
#include "spherelab/transforms.hpp"

namespace spherelab {

namespace {

/// One-dimensional central stencils, exact to O(h^2), as (offset, coef/h^m).
struct Stencil {
  std::vector<int> offsets;
  std::vector<double> coefs;
};

Stencil central_stencil(int m) {
  switch (m) {
    case 1:
      return {{-1, 1}, {-0.5, 0.5}};
    case 2:
      return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
    case 3:
      return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    case 4:
      return {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
    default:
      throw std::invalid_argument(
          "finite_diff: per-coordinate order must be in 1..4");
  }
}

double tensor_stencil_eval(
    const std::function<double(const Eigen::VectorXd&)>& fn,
    const MultiIndex& alpha, const Eigen::Ref<const Eigen::VectorXd>& x,
    double h) {
  std::vector<int> dims;
  std::vector<Stencil> stencils;
  double scale = 1.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0) {
      dims.push_back(static_cast<int>(i));
      stencils.push_back(central_stencil(alpha[i]));
      scale *= std::pow(h, alpha[i]);
    }
  }
  // Walk the tensor product of the active stencils.
  std::vector<std::size_t> idx(dims.size(), 0);
  Eigen::VectorXd point(x.size());
  double acc = 0.0;
  for (;;) {
    point = x;
    double coef = 1.0;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      point[dims[d]] += h * stencils[d].offsets[idx[d]];
      coef *= stencils[d].coefs[idx[d]];
    }
    acc += coef * fn(point);
    std::size_t d = 0;
    for (; d < dims.size(); ++d) {
      if (++idx[d] < stencils[d].offsets.size()) break;
      idx[d] = 0;
    }
    if (d == dims.size()) break;
  }
  return acc / scale;
}

bool is_odd_integer(double p) {
  const double r = std::nearbyint(p);
  return std::abs(p - r) <= 1e-9 &&
         static_cast<long long>(std::llround(r)) % 2 != 0;
}

bool is_even_integer(double p) {
  const double r = std::nearbyint(p);
  return std::abs(p - r) <= 1e-9 &&
         static_cast<long long>(std::llround(r)) % 2 == 0;
}

void require_pointwise(const SphericalDensity& f, const char* who) {
  if (f.kind() == SphericalDensity::Kind::Atoms)
    throw std::domain_error(std::string(who) +
                            ": requires a pointwise-evaluable density");
}

/// integral |<u,xi>|^{p-2} g(xi) dxi with g given as a node functional,
/// through the axis-adapted rule; shared by the Hessian-type evaluations.
template <class G>
double axis_integral(const Eigen::Ref<const Eigen::VectorXd>& u, double q,
                     int level, G&& g) {
  const QuadratureRule rule = weighted_axis_rule(u, q, level);
  return integrate(rule, g);
}

/// w_k f(node_k) for every node of a rule (one density sweep, reused by all
/// matrix entries).
Eigen::VectorXd weighted_density_values(const QuadratureRule& rule,
                                        const SphericalDensity& f) {
  const Eigen::Index n = rule.nodes.rows();
  Eigen::VectorXd vals(n);
  Eigen::VectorXd xi(rule.dim);
  for (Eigen::Index k = 0; k < n; ++k) {
    xi = rule.nodes.row(k).transpose();
    vals[k] = rule.weights[k] * f(xi);
  }
  return vals;
}

/// sum_k cached_k * nodes(k,i) * nodes(k,j), pairwise.
double moment_ij(const QuadratureRule& rule, const Eigen::VectorXd& cached,
                 Eigen::Index i, Eigen::Index j, Eigen::VectorXd& buf) {
  for (Eigen::Index k = 0; k < cached.size(); ++k)
    buf[k] = cached[k] * rule.nodes(k, i) * rule.nodes(k, j);
  return pairwise_sum(buf);
}

}  // namespace

double finite_diff(const std::function<double(const Eigen::VectorXd&)>& fn,
                   const MultiIndex& alpha,
                   const Eigen::Ref<const Eigen::VectorXd>& x, double h) {
  if (alpha.size() != x.size())
    throw std::invalid_argument("finite_diff: alpha/x dimension mismatch");
  const int order = multi_order(alpha);
  if (order < 1)
    throw std::invalid_argument("finite_diff: |alpha| must be >= 1");
  if (order > 4)
    throw std::invalid_argument(
        "finite_diff: |alpha| <= 4 is the supported oracle range");
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 4)
      throw std::invalid_argument(
          "finite_diff: per-coordinate order must be <= 4");
  const double scale = std::max(1.0, x.norm());
  if (h <= 0.0) {
    h = std::pow(std::numeric_limits<double>::epsilon(),
                 1.0 / (order + 2.0)) *
        scale;
  } else if (h < 1e-12 * scale) {
    throw std::domain_error(
        "finite_diff: step underflow; h is below the rounding floor for "
        "this point");
  }
  const double coarse = tensor_stencil_eval(fn, alpha, x, h);
  const double fine = tensor_stencil_eval(fn, alpha, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;  // cancels the O(h^2) error term
}

double analytic_deriv_odd(const SphericalDensity& f, int k,
                          const MultiIndex& alpha,
                          const Eigen::Ref<const Eigen::VectorXd>& x,
                          int level) {
  require_pointwise(f, "analytic_deriv_odd");
  if (k < 0) throw std::invalid_argument("analytic_deriv_odd: need k >= 0");
  if (alpha.size() != x.size() || f.dim() != x.size())
    throw std::invalid_argument("analytic_deriv_odd: dimension mismatch");
  if (multi_order(alpha) != 2 * k + 2)
    throw std::invalid_argument(
        "analytic_deriv_odd: the order-(2k+2) formula needs |alpha| = 2k+2 "
        "(got |alpha| = " +
        std::to_string(multi_order(alpha)) + ", k = " + std::to_string(k) +
        ")");
  const double norm = x.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("analytic_deriv_odd: x must be nonzero");
  const double c = c_const(2.0 * k + 1.0);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  const QuadratureRule rule = subsphere_rule(x, level);
  const double integral = integrate(rule, [&](const Eigen::VectorXd& xi) {
    return monomial(xi, alpha) * f(xi);
  });
  return c * sign / norm * integral;
}

double analytic_deriv_frac(const SphericalDensity& f, double p,
                           const MultiIndex& alpha,
                           const Eigen::Ref<const Eigen::VectorXd>& x,
                           int level) {
  require_pointwise(f, "analytic_deriv_frac");
  if (alpha.size() != x.size() || f.dim() != x.size())
    throw std::invalid_argument("analytic_deriv_frac: dimension mismatch");
  const int order = multi_order(alpha);
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument(
        "analytic_deriv_frac: |alpha| must be even and >= 2");
  if (!(p > 1.0))
    throw std::invalid_argument(
        "analytic_deriv_frac: requires p > 1 (got p = " + std::to_string(p) +
        ")");
  if (is_even_integer(p))
    throw std::invalid_argument(
        "analytic_deriv_frac: p must not be an even integer (the constant "
        "C_p is undefined there)");
  if (is_odd_integer(p) && std::abs(order - (p + 1.0)) < 0.5)
    throw std::invalid_argument(
        "analytic_deriv_frac: at odd integer p with |alpha| = p + 1 the "
        "derivative concentrates on the orthogonal subsphere; use the "
        "odd-order path (analytic_deriv_odd)");
  if (!(order < p + 1.0))
    throw std::invalid_argument(
        "analytic_deriv_frac: the formula requires |alpha| < p + 1 "
        "(got |alpha| = " +
        std::to_string(order) + ", p = " + std::to_string(p) + ")");
  const double norm = x.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("analytic_deriv_frac: x must be nonzero");
  const double q = p - order;
  const double sign = (order / 2) % 2 == 0 ? 1.0 : -1.0;  // (-1)^{|alpha|/2}
  const double ratio = c_const(p) / c_const(q);
  const double integral =
      axis_integral(x, q, level, [&](const Eigen::VectorXd& xi) {
        return monomial(xi, alpha) * f(xi);
      });
  return sign * ratio * std::pow(norm, q) * integral;
}

Eigen::VectorXd grad_Hp(const SphericalDensity& f, double p,
                        const Eigen::Ref<const Eigen::VectorXd>& u,
                        int level) {
  require_pointwise(f, "grad_Hp");
  if (f.dim() != u.size())
    throw std::invalid_argument("grad_Hp: dimension mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("grad_Hp: need p >= 1");
  const double norm = u.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("grad_Hp: u must be nonzero");
  const Eigen::Index n = u.size();
  Eigen::VectorXd g(n);
  if (std::abs(p - 1.0) <= 1e-12) {
    // grad T_1 f = integral sgn(<u,xi>) xi f dxi.  The sign kernel is not a
    // polynomial, so this path converges algebraically in the level.
    const QuadratureRule rule = weighted_axis_rule(u, 0.0, level);
    const Eigen::VectorXd cached = weighted_density_values(rule, f);
    Eigen::VectorXd buf(cached.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < cached.size(); ++k) {
        const double t = u.dot(rule.nodes.row(k).transpose());
        const double sgn = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
        buf[k] = cached[k] * sgn * rule.nodes(k, i);
      }
      g[i] = pairwise_sum(buf);
    }
    return g;
  }
  // p > 1: |<u,xi>|^{p-2} <u,xi> xi_i f is an even-polynomial integrand
  // against the q = p-2 kernel, so the axis rule is exact for band-limited
  // f.  Scale out |u| first: the rule is built for the unit axis.
  const QuadratureRule rule = weighted_axis_rule(u, p - 2.0, level);
  const Eigen::VectorXd uhat = u / norm;
  const Eigen::VectorXd cached = weighted_density_values(rule, f);
  const Eigen::VectorXd tvals = rule.nodes * uhat;
  Eigen::VectorXd buf(cached.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < cached.size(); ++k)
      buf[k] = cached[k] * tvals[k] * rule.nodes(k, i);
    g[i] = pairwise_sum(buf);
  }
  // integral |<u,.>|^{p-2} <u,.> = |u|^{p-1} * (unit-axis integral).
  return p * std::pow(norm, p - 1.0) * g;
}

Eigen::MatrixXd hessian_Hp(const SphericalDensity& f, double p,
                           const Eigen::Ref<const Eigen::VectorXd>& u,
                           int level) {
  require_pointwise(f, "hessian_Hp");
  if (f.dim() != u.size())
    throw std::invalid_argument("hessian_Hp: dimension mismatch");
  if (!(p > 1.0))
    throw std::invalid_argument(
        "hessian_Hp: requires p > 1 (p = 1 second derivatives live on the "
        "orthogonal subsphere; use hessian_H_p1)");
  if (is_even_integer(p))
    throw std::invalid_argument(
        "hessian_Hp: p must not be an even integer (derivative constants "
        "degenerate; odd integers are consistent)");
  const double norm = u.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("hessian_Hp: u must be nonzero");
  const Eigen::Index n = u.size();
  const QuadratureRule rule = weighted_axis_rule(u, p - 2.0, level);
  const double scale = p * (p - 1.0) * std::pow(norm, p - 2.0);
  const Eigen::VectorXd cached = weighted_density_values(rule, f);
  Eigen::VectorXd buf(cached.size());
  Eigen::MatrixXd hess(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = scale * moment_ij(rule, cached, i, j, buf);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  return hess;
}

Eigen::MatrixXd hessian_H_p1(const SphericalDensity& f,
                             const Eigen::Ref<const Eigen::VectorXd>& u,
                             int level) {
  require_pointwise(f, "hessian_H_p1");
  if (f.dim() != u.size())
    throw std::invalid_argument("hessian_H_p1: dimension mismatch");
  const double norm = u.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("hessian_H_p1: u must be nonzero");
  const Eigen::Index n = u.size();
  const QuadratureRule rule = subsphere_rule(u, level);
  const Eigen::VectorXd cached = weighted_density_values(rule, f);
  Eigen::VectorXd buf(cached.size());
  Eigen::MatrixXd hess(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = 2.0 / norm * moment_ij(rule, cached, i, j, buf);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  return hess;
}

Eigen::MatrixXd hessian_H(const SphericalDensity& f, double p,
                          const Eigen::Ref<const Eigen::VectorXd>& u,
                          int level) {
  if (!(p > 1.0))
    throw std::invalid_argument(
        "hessian_H: requires p > 1 (use hessian_H_p1 at p = 1)");
  const Eigen::MatrixXd hp = hessian_Hp(f, p, u, level);
  const Eigen::VectorXd g = grad_Hp(f, p, u, level);
  TransformSpec spec{p, static_cast<int>(u.size()), level};
  const double G = lp_cosine_axis(f, spec, u);
  if (!(G > 0.0))
    throw std::domain_error(
        "hessian_H: H^p(u) = " + std::to_string(G) +
        " is not positive; the p-th root is not differentiable here");
  // Hess(G^{1/p}) = (1/(p G^{1-1/p})) [Hess G - ((p-1)/p) g g^T / G].
  const double c1 = 1.0 / (p * std::pow(G, 1.0 - 1.0 / p));
  return c1 * (hp - ((p - 1.0) / p) * (g * g.transpose()) / G);
}

HessianReport hessian_report(const SphericalDensity& f, double p,
                             const Eigen::Ref<const Eigen::VectorXd>& u,
                             int level, const std::string& method) {
  HessianReport rep;
  rep.point = u;
  rep.p = p;
  rep.method = method;
  TransformSpec spec{p, static_cast<int>(u.size()), level};
  rep.value_Hp = lp_cosine_axis(f, spec, u);
  if (method == "analytic") {
    rep.gradient_Hp = grad_Hp(f, p, u, level);
    rep.hessian_Hp = hessian_Hp(f, p, u, level);
    rep.hessian_H = hessian_H(f, p, u, level);
  } else if (method == "finite-difference") {
    const Eigen::Index n = u.size();
    auto eval_hp = [&](const Eigen::VectorXd& y) {
      return lp_cosine_axis(f, spec, y);
    };
    auto eval_h = [&](const Eigen::VectorXd& y) {
      return std::pow(lp_cosine_axis(f, spec, y), 1.0 / p);
    };
    rep.gradient_Hp.resize(n);
    rep.hessian_Hp.resize(n, n);
    rep.hessian_H.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      MultiIndex a = MultiIndex::Zero(n);
      a[i] = 1;
      rep.gradient_Hp[i] = finite_diff(eval_hp, a, u);
      for (Eigen::Index j = i; j < n; ++j) {
        MultiIndex b = MultiIndex::Zero(n);
        b[i] += 1;
        b[j] += 1;
        const double dhp = finite_diff(eval_hp, b, u);
        const double dh = finite_diff(eval_h, b, u);
        rep.hessian_Hp(i, j) = dhp;
        rep.hessian_Hp(j, i) = dhp;
        rep.hessian_H(i, j) = dh;
        rep.hessian_H(j, i) = dh;
      }
    }
  } else {
    throw std::invalid_argument(
        "hessian_report: method must be 'analytic' or 'finite-difference'");
  }
  const double euler = rep.gradient_Hp.dot(u);
  rep.euler_defect = std::abs(euler - p * rep.value_Hp) /
                     std::max(1.0, std::abs(p * rep.value_Hp));
  return rep;
}

}  // namespace spherelab
