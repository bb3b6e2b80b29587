#include "spherelab/harmonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spherelab/quadrature.hpp"

namespace spherelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Associated Legendre P_l^m(t) (Condon-Shortley phase), m >= 0.
double assoc_legendre(int l, int m, double t) {
  const double s2 = std::max(0.0, 1.0 - t * t);
  const double s = std::sqrt(s2);
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= -(2.0 * k - 1.0) * s;
  if (l == m) return pmm;
  double pmm1 = t * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmm1;
  double plm = 0.0;
  for (int k = m + 2; k <= l; ++k) {
    plm = (t * (2.0 * k - 1.0) * pmm1 - (k + m - 1.0) * pmm) / (k - m);
    pmm = pmm1;
    pmm1 = plm;
  }
  return plm;
}

/// sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!), m >= 0.
double harm_norm(int l, int m) {
  double ratio = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= k;
  return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * ratio);
}

/// Fill vals[l*(l+1)+m] with Y_l^m(xi) for all l <= lmax, |m| <= l.
void sph_harm_all(int lmax, const Eigen::Vector3d& xi, Eigen::VectorXd& vals) {
  const double norm = xi.norm();
  const double ct = xi[2] / norm;
  const double phi = std::atan2(xi[1], xi[0]);
  vals.resize((lmax + 1) * (lmax + 1));
  for (int l = 0; l <= lmax; ++l) {
    vals[l * (l + 1)] = harm_norm(l, 0) * assoc_legendre(l, 0, ct);
    for (int m = 1; m <= l; ++m) {
      const double base =
          std::sqrt(2.0) * harm_norm(l, m) * assoc_legendre(l, m, ct);
      vals[l * (l + 1) + m] = base * std::cos(m * phi);
      vals[l * (l + 1) - m] = base * std::sin(m * phi);
    }
  }
}

/// T Y_l^0 at the unit direction x through quadrature of the given level.
double apply_to_harmonic(SphereTransform which, int l,
                         const Eigen::VectorXd& x, int level) {
  const QuadratureRule rule = (which == SphereTransform::Cosine)
                                  ? weighted_axis_rule(x, 1.0, level)
                                  : subsphere_rule(x, level);
  return integrate(rule, [&](const Eigen::VectorXd& xi) {
    return real_sph_harm(l, 0, Eigen::Vector3d(xi));
  });
}

}  // namespace

double legendre_p(int l, double t) {
  if (l < 0) throw std::invalid_argument("legendre_p: need l >= 0");
  if (l == 0) return 1.0;
  double pm2 = 1.0, pm1 = t;
  for (int k = 2; k <= l; ++k) {
    const double pk = ((2.0 * k - 1.0) * t * pm1 - (k - 1.0) * pm2) / k;
    pm2 = pm1;
    pm1 = pk;
  }
  return pm1;
}

double real_sph_harm(int l, int m,
                     const Eigen::Ref<const Eigen::Vector3d>& xi) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("real_sph_harm: need l >= 0 and |m| <= l");
  const double norm = xi.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("real_sph_harm: xi must be nonzero");
  const double ct = xi[2] / norm;
  if (m == 0) return harm_norm(l, 0) * assoc_legendre(l, 0, ct);
  const int ma = std::abs(m);
  const double phi = std::atan2(xi[1], xi[0]);
  const double base =
      std::sqrt(2.0) * harm_norm(l, ma) * assoc_legendre(l, ma, ct);
  return (m > 0) ? base * std::cos(ma * phi) : base * std::sin(ma * phi);
}

double HarmonicSpectrum::coefficient(int l, int m) const {
  if (l < 0 || l > lmax || std::abs(m) > l)
    throw std::out_of_range("HarmonicSpectrum::coefficient: (l, m) outside "
                            "the stored degrees");
  return coef[l * (l + 1) + m];
}

HarmonicSpectrum project(const SphericalDensity& f, int lmax, int level) {
  if (f.dim() != 3)
    throw std::invalid_argument("project: harmonic analysis is on S^2 only");
  if (lmax < 0) throw std::invalid_argument("project: need lmax >= 0");
  const QuadratureRule rule = sphere_rule(3, level);
  const Eigen::Index M = rule.weights.size();
  const int ncoef = (lmax + 1) * (lmax + 1);

  Eigen::VectorXd fvals(M);
  Eigen::MatrixXd harm(M, ncoef);
  Eigen::VectorXd row;
  for (Eigen::Index i = 0; i < M; ++i) {
    const Eigen::Vector3d x = rule.nodes.row(i).transpose();
    fvals[i] = f(x);
    sph_harm_all(lmax, x, row);
    harm.row(i) = row.transpose();
  }

  HarmonicSpectrum spec;
  spec.lmax = lmax;
  spec.coef.resize(ncoef);
  Eigen::VectorXd buf(M);
  for (int j = 0; j < ncoef; ++j) {
    buf = rule.weights.cwiseProduct(fvals).cwiseProduct(harm.col(j));
    spec.coef[j] = pairwise_sum(buf);
  }

  const Eigen::VectorXd recon = harm * spec.coef;
  buf = rule.weights.cwiseProduct(fvals).cwiseProduct(fvals);
  const double norm2 = pairwise_sum(buf);
  buf = rule.weights.cwiseProduct((fvals - recon).cwiseAbs2());
  const double err2 = pairwise_sum(buf);
  spec.reconstruction_error =
      (norm2 > 0.0) ? std::sqrt(std::max(0.0, err2) / norm2) : 0.0;
  return spec;
}

MultiplierEstimate transform_multiplier(SphereTransform which, int l,
                                        int level, bool with_residual) {
  if (l < 0) throw std::invalid_argument("transform_multiplier: need l >= 0");
  if (l % 2 != 0)
    throw std::invalid_argument(
        "transform_multiplier: both transforms annihilate odd-degree "
        "harmonics, so no eigenvalue is measurable at l = " +
        std::to_string(l));

  // The transformed harmonic is again a degree-l harmonic, so an outer rule
  // exact through degree 2l + 3 integrates every product below exactly.
  const int outer_level = std::max(l + 2, 4);
  const QuadratureRule outer = sphere_rule(3, outer_level);
  const Eigen::Index M = outer.weights.size();

  Eigen::VectorXd ty(M), yl0(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    const Eigen::VectorXd x = outer.nodes.row(i).transpose();
    ty[i] = apply_to_harmonic(which, l, x, level);
    yl0[i] = real_sph_harm(l, 0, Eigen::Vector3d(x));
  }

  Eigen::VectorXd buf = outer.weights.cwiseProduct(ty).cwiseProduct(yl0);
  const double num = pairwise_sum(buf);
  buf = outer.weights.cwiseProduct(yl0).cwiseProduct(yl0);
  const double den = pairwise_sum(buf);
  if (!(std::abs(den) > 1e-14))
    throw std::runtime_error(
        "transform_multiplier: degenerate harmonic normalization");

  MultiplierEstimate est;
  est.l = l;
  est.value = num / den;

  if (with_residual) {
    const int lproj = l + 2;
    const int ncoef = (lproj + 1) * (lproj + 1);
    Eigen::MatrixXd prods(M, ncoef);
    Eigen::VectorXd row;
    for (Eigen::Index i = 0; i < M; ++i) {
      const Eigen::Vector3d x = outer.nodes.row(i).transpose();
      sph_harm_all(lproj, x, row);
      prods.row(i) = (outer.weights[i] * ty[i]) * row.transpose();
    }
    const int diag = l * (l + 1);
    double res2 = 0.0;
    for (int j = 0; j < ncoef; ++j) {
      buf = prods.col(j);
      const double c = pairwise_sum(buf);
      if (j != diag) res2 += c * c;
    }
    est.diag_residual = std::sqrt(res2);
  }
  return est;
}

InversionCheck inversion_ratio_check(int lmax, int level) {
  if (lmax < 0)
    throw std::invalid_argument("inversion_ratio_check: need lmax >= 0");
  InversionCheck chk;
  for (int l = 0; l <= lmax; l += 2) chk.degrees.push_back(l);
  const Eigen::Index m = static_cast<Eigen::Index>(chk.degrees.size());
  chk.cosine_multipliers.resize(m);
  chk.radon_multipliers.resize(m);
  chk.ratios.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int l = chk.degrees[static_cast<std::size_t>(i)];
    const double t_l =
        transform_multiplier(SphereTransform::Cosine, l, level).value;
    const double r_l =
        transform_multiplier(SphereTransform::Radon, l, level).value;
    chk.cosine_multipliers[i] = t_l;
    chk.radon_multipliers[i] = r_l;
    // On S^2 the Laplace-Beltrami operator scales degree-l harmonics by
    // -l(l+1), so the inversion factor per degree is t_l * (2 - l(l+1)).
    const double fac = 2.0 - static_cast<double>(l) * (l + 1.0);
    const double denom = t_l * fac;
    if (!(std::abs(denom) > 1e-14))
      throw std::runtime_error(
          "inversion_ratio_check: degenerate cosine multiplier at l = " +
          std::to_string(l));
    chk.ratios[i] = r_l / denom;
  }
  const double rho0 = chk.ratios[0];
  chk.spread = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    chk.spread =
        std::max(chk.spread, std::abs(chk.ratios[i] - rho0) / std::abs(rho0));
  chk.constant = chk.ratios.mean();
  return chk;
}

}  // namespace spherelab
