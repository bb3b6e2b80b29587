#include "spherelab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spherelab/specfun.hpp"

namespace spherelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Moment mu_0 = integral of (1-x)^alpha (1+x)^beta over [-1,1].
double jacobi_mu0(double alpha, double beta) {
  return std::pow(2.0, alpha + beta + 1.0) * gamma_fn(alpha + 1.0) *
         gamma_fn(beta + 1.0) / gamma_fn(alpha + beta + 2.0);
}

/// Append the antipodal pair (node, -node), both with weight w.
void emit_pair(Eigen::MatrixXd& nodes, Eigen::VectorXd& weights,
               Eigen::Index& at, const Eigen::VectorXd& node, double w) {
  nodes.row(at) = node.transpose();
  weights[at] = w;
  ++at;
  nodes.row(at) = -node.transpose();
  weights[at] = w;
  ++at;
}

/// Kronecker R_d lattice fallback for dim > 6: deterministic equal-weight
/// nodes from the generalized-golden-ratio sequence pushed through
/// Box-Muller and normalized, then symmetrized.
QuadratureRule lattice_sphere_rule(int dim, int level) {
  const int pairs = 2 * level * level;
  // phi_d: unique positive root of x^{d+1} = x + 1.
  const int d = 2 * ((dim + 1) / 2);  // even count of uniforms per point
  double phi = 1.5;
  for (int it = 0; it < 64; ++it)
    phi = std::pow(1.0 + phi, 1.0 / (d + 1));
  Eigen::VectorXd alpha(d);
  for (int j = 0; j < d; ++j) {
    double a = std::pow(1.0 / phi, j + 1);
    alpha[j] = a - std::floor(a);
  }
  QuadratureRule rule;
  rule.dim = dim;
  rule.nodes.resize(2 * pairs, dim);
  rule.weights.resize(2 * pairs);
  const double w = sphere_surface(dim) / (2.0 * pairs);
  Eigen::VectorXd u(d), z(d), node(dim);
  Eigen::Index at = 0;
  for (int i = 0; i < pairs; ++i) {
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
    node = z.head(dim);
    const double norm = node.norm();
    if (norm < 1e-8) {  // essentially impossible for the lattice; skip safely
      node.setZero();
      node[0] = 1.0;
    } else {
      node /= norm;
    }
    emit_pair(rule.nodes, rule.weights, at, node, w);
  }
  rule.degree = 1;
  return rule;
}

}  // namespace

double pairwise_sum(Eigen::VectorXd& terms) {
  Eigen::Index n = terms.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    const Eigen::Index half = n / 2;
    for (Eigen::Index i = 0; i < half; ++i)
      terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2 == 1) {
      terms[half] = terms[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return terms[0];
}

void gauss_jacobi(int n, double alpha, double beta, Eigen::VectorXd& x,
                  Eigen::VectorXd& w) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("gauss_jacobi: need alpha, beta > -1");
  // Monic three-term recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  const double ab = alpha + beta;
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < n; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (alpha + 1.0) * (beta + 1.0) /
           ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      const double t = 2.0 * k + ab;
      bk = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (t * t * (t + 1.0) * (t - 1.0));
    }
    sub[k - 1] = std::sqrt(bk);
  }
  if (n == 1) {
    x.resize(1);
    w.resize(1);
    x[0] = diag[0];
    w[0] = jacobi_mu0(alpha, beta);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi: tridiagonal eigensolve failed");
  const double mu0 = jacobi_mu0(alpha, beta);
  x = es.eigenvalues();
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  gauss_jacobi(n, 0.0, 0.0, x, w);
}

double sphere_surface(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_surface: need dim >= 1");
  return 2.0 * std::pow(kPi, dim / 2.0) / gamma_fn(dim / 2.0);
}

Eigen::VectorXd canonical_direction(
    const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double norm = x.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument(
        "canonical_direction: x must be nonzero and finite");
  Eigen::VectorXd v = x / norm;
  Eigen::Index imax = 0;
  double amax = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  if (v[imax] < 0.0) v = -v;
  return v;
}

Eigen::MatrixXd tangent_basis(const Eigen::Ref<const Eigen::VectorXd>& unit_v) {
  const Eigen::Index n = unit_v.size();
  if (n < 2) throw std::invalid_argument("tangent_basis: need dim >= 2");
  const double sigma = unit_v[n - 1] < 0.0 ? -1.0 : 1.0;
  Eigen::VectorXd hv = unit_v;
  hv[n - 1] += sigma;
  const double vtv = hv.squaredNorm();  // 2 (1 + |v_n|) >= 2
  // Columns i < n-1 of H = I - 2 hv hv^T / (hv^T hv).
  Eigen::MatrixXd basis(n, n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    basis.col(i) = -2.0 * hv[i] / vtv * hv;
    basis(i, i) += 1.0;
  }
  return basis;
}

QuadratureRule sphere_rule(int dim, int level) {
  if (dim < 2)
    throw std::invalid_argument("sphere_rule: need dim >= 2, got " +
                                std::to_string(dim));
  if (level < 1)
    throw std::invalid_argument("sphere_rule: need level >= 1, got " +
                                std::to_string(level));
  QuadratureRule rule;
  rule.dim = dim;
  if (dim == 2) {
    rule.nodes.resize(2 * level, 2);
    rule.weights.resize(2 * level);
    const double w = kPi / level;
    Eigen::VectorXd node(2);
    Eigen::Index at = 0;
    for (int j = 0; j < level; ++j) {
      const double theta = kPi * j / level;
      node << std::cos(theta), std::sin(theta);
      emit_pair(rule.nodes, rule.weights, at, node, w);
    }
    rule.degree = 2 * level - 1;
    return rule;
  }
  if (dim == 3) {
    Eigen::VectorXd t, wt;
    gauss_legendre(level, t, wt);
    // level polar nodes x level azimuth pair leaders x 2 (antipodes).
    rule.nodes.resize(2 * level * level, 3);
    rule.weights.resize(rule.nodes.rows());
    const double wphi = kPi / level;  // 2*level azimuths over 2 pi
    Eigen::VectorXd node(3);
    Eigen::Index at = 0;
    for (int i = 0; i < level; ++i) {
      const double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
      for (int j = 0; j < level; ++j) {
        const double phi = kPi * j / level;
        node << s * std::cos(phi), s * std::sin(phi), t[i];
        emit_pair(rule.nodes, rule.weights, at, node, wt[i] * wphi);
      }
    }
    rule.degree = 2 * level - 1;
    return rule;
  }
  if (dim > 6) return lattice_sphere_rule(dim, level);

  // 4 <= dim <= 6: zonal Gauss-Jacobi times a recursive subsphere rule.
  const double a = (dim - 3) / 2.0;
  Eigen::VectorXd t, wt;
  gauss_jacobi(level, a, a, t, wt);
  const QuadratureRule sub = sphere_rule(dim - 1, level);
  const Eigen::Index nsub = sub.nodes.rows();
  // level zonal nodes x nsub/2 subsphere pair leaders x 2 (antipodes).
  rule.nodes.resize(level * nsub, dim);
  rule.weights.resize(rule.nodes.rows());
  Eigen::VectorXd node(dim);
  Eigen::Index at = 0;
  for (int i = 0; i < level; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    for (Eigen::Index j = 0; j < nsub; j += 2) {  // pair leaders only
      node.head(dim - 1) = s * sub.nodes.row(j).transpose();
      node[dim - 1] = t[i];
      emit_pair(rule.nodes, rule.weights, at, node, wt[i] * sub.weights[j]);
    }
  }
  rule.degree = std::min(2 * level - 1, sub.degree);
  return rule;
}

QuadratureRule subsphere_rule(const Eigen::Ref<const Eigen::VectorXd>& x,
                              int level) {
  const int dim = static_cast<int>(x.size());
  if (dim < 2) throw std::invalid_argument("subsphere_rule: need dim >= 2");
  const Eigen::VectorXd v = canonical_direction(x);
  const Eigen::MatrixXd basis = tangent_basis(v);
  QuadratureRule rule;
  rule.dim = dim;
  if (dim == 2) {
    rule.nodes.resize(2, 2);
    rule.weights.resize(2);
    Eigen::Index at = 0;
    emit_pair(rule.nodes, rule.weights, at, basis.col(0), 1.0);
    rule.degree = kExactDegree;
    return rule;
  }
  if (level < 1) throw std::invalid_argument("subsphere_rule: need level >= 1");
  const QuadratureRule sub = sphere_rule(dim - 1, level);
  rule.nodes.resize(sub.nodes.rows(), dim);
  rule.weights = sub.weights;
  Eigen::VectorXd node(dim);
  Eigen::Index at = 0;
  for (Eigen::Index j = 0; j < sub.nodes.rows(); j += 2) {
    node = basis * sub.nodes.row(j).transpose();
    emit_pair(rule.nodes, rule.weights, at, node, sub.weights[j]);
  }
  rule.degree = sub.degree;
  return rule;
}

QuadratureRule weighted_axis_rule(const Eigen::Ref<const Eigen::VectorXd>& u,
                                  double q, int level) {
  const int dim = static_cast<int>(u.size());
  if (dim < 2) throw std::invalid_argument("weighted_axis_rule: need dim >= 2");
  if (level < 1)
    throw std::invalid_argument("weighted_axis_rule: need level >= 1");
  if (q <= -1.0)
    throw std::invalid_argument(
        "weighted_axis_rule: need q > -1 for an integrable weight, got " +
        std::to_string(q));
  const Eigen::VectorXd v = canonical_direction(u);
  const Eigen::MatrixXd basis = tangent_basis(v);

  // Gauss-Jacobi in y = t^2 on [0,1]: weight y^{(q-1)/2} (1-y)^{(dim-3)/2}.
  // Map from the [-1,1] convention (1-x)^alpha (1+x)^beta, y = (1+x)/2:
  // node y = (1+x)/2, weight v = w / 2^{alpha+beta+1}.
  const double alpha = (dim - 3) / 2.0;
  const double beta = (q - 1.0) / 2.0;
  Eigen::VectorXd xj, wj;
  gauss_jacobi(level, alpha, beta, xj, wj);
  const double wscale = std::pow(2.0, -(alpha + beta + 1.0));

  QuadratureRule rule;
  rule.dim = dim;
  Eigen::Index nsub;
  Eigen::MatrixXd omega;   // subsphere nodes, embedded, one per pair leader
  Eigen::VectorXd wsub;
  int odeg;
  if (dim == 2) {
    nsub = 1;
    omega = basis.col(0).transpose();
    wsub.resize(1);
    wsub[0] = 1.0;
    odeg = kExactDegree;
  } else {
    const QuadratureRule sub = sphere_rule(dim - 1, level);
    nsub = sub.nodes.rows() / 2;
    omega.resize(nsub, dim);
    wsub.resize(nsub);
    for (Eigen::Index j = 0; j < nsub; ++j) {
      omega.row(j) =
          (basis * sub.nodes.row(2 * j).transpose()).transpose();
      wsub[j] = sub.weights[2 * j];
    }
    odeg = sub.degree;
  }
  rule.nodes.resize(2 * 2 * level * nsub, dim);
  rule.weights.resize(rule.nodes.rows());
  Eigen::VectorXd node(dim);
  Eigen::Index at = 0;
  for (int k = 0; k < level; ++k) {
    const double y = 0.5 * (1.0 + xj[k]);
    const double t = std::sqrt(std::min(1.0, std::max(0.0, y)));
    const double s = std::sqrt(std::max(0.0, 1.0 - y));
    const double vk = wj[k] * wscale;
    for (Eigen::Index j = 0; j < nsub; ++j) {
      const double w = 0.5 * vk * wsub[j];
      node = t * v + s * omega.row(j).transpose();
      emit_pair(rule.nodes, rule.weights, at, node, w);
      node = t * v - s * omega.row(j).transpose();
      emit_pair(rule.nodes, rule.weights, at, node, w);
    }
  }
  rule.degree = std::min(4 * level - 2, odeg);
  return rule;
}

}  // namespace spherelab
