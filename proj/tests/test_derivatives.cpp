#include "doctest.h"

#include <spherelab/density.hpp>
#include <spherelab/derivatives.hpp>
#include <spherelab/quadrature.hpp>
#include <spherelab/transforms.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace spherelab;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

MultiIndex idx2(int a, int b) {
  MultiIndex m(2);
  m << a, b;
  return m;
}

MultiIndex idx3(int a, int b, int c) {
  MultiIndex m(3);
  m << a, b, c;
  return m;
}

/// Positive band-limited test density on S^2.
SphericalDensity smooth_positive() {
  return harmonic_density({{0, 0, 1.0}, {2, 0, 0.3}, {2, 2, 0.15}});
}

double axis_transform(const SphericalDensity& f, double p, int level,
                      const Eigen::VectorXd& x) {
  TransformSpec spec;
  spec.p = p;
  spec.dim = f.dim();
  spec.level = level;
  return lp_cosine_axis(f, spec, x);
}
}  // namespace

TEST_CASE("finite differences reproduce classical derivatives") {
  auto trig = [](const Eigen::VectorXd& x) {
    return std::sin(x[0] + 2.0 * x[1]);
  };
  const Eigen::VectorXd x0 = vec2(0.3, 0.4);
  CHECK(finite_diff(trig, idx2(1, 0), x0) ==
        doctest::Approx(std::cos(1.1)).epsilon(1e-8));
  CHECK(finite_diff(trig, idx2(1, 1), x0) ==
        doctest::Approx(-2.0 * std::sin(1.1)).epsilon(1e-7));
  CHECK(finite_diff(trig, idx2(0, 2), x0) ==
        doctest::Approx(-4.0 * std::sin(1.1)).epsilon(1e-7));

  auto quartic = [](const Eigen::VectorXd& x) {
    return x[0] * x[0] * x[0] * x[0];
  };
  CHECK(finite_diff(quartic, idx2(3, 0), vec2(0.7, 0.0)) ==
        doctest::Approx(24.0 * 0.7).epsilon(1e-6));
  CHECK(finite_diff(quartic, idx2(4, 0), vec2(0.7, 0.0)) ==
        doctest::Approx(24.0).epsilon(1e-3));
}

TEST_CASE("finite differences accept an explicit step") {
  auto biquad = [](const Eigen::VectorXd& x) {
    return x[0] * x[0] * x[1] * x[1];
  };
  CHECK(finite_diff(biquad, idx2(1, 1), vec2(1.0, 1.0), 1e-3) ==
        doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("finite differences validate their input") {
  auto fn = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  CHECK_THROWS_AS(finite_diff(fn, idx2(0, 0), vec2(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(finite_diff(fn, idx2(3, 2), vec2(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(finite_diff(fn, idx3(1, 0, 0), vec2(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(finite_diff(fn, idx2(1, 1), vec2(1, 0), 1e-15),
                  std::domain_error);
}

TEST_CASE("subsphere-moment second derivative of the flat density is 2 pi") {
  const SphericalDensity f = constant_density(3);
  CHECK(analytic_deriv_odd(f, 0, idx3(2, 0, 0), vec3(0, 0, 1), 16) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("subsphere moments with an axis factor vanish identically") {
  // At u = e_3 the carrier has an exactly-zero third coordinate, so any
  // multi-index touching coordinate 3 yields a bitwise-zero sum.
  const SphericalDensity f = smooth_positive();
  CHECK(analytic_deriv_odd(f, 0, idx3(1, 0, 1), vec3(0, 0, 1), 16) == 0.0);
  CHECK(analytic_deriv_odd(f, 0, idx3(0, 1, 1), vec3(0, 0, 1), 16) == 0.0);
}

TEST_CASE("fourth-order subsphere moment on the circle") {
  // k = 1 (p = 3), n = 2: at e_2 the carrier is {+-e_1} with weight 1, so
  // the (4,0) derivative is C_3 * (xi_1^4 + xi_1^4) = 12 * 2 = 24.
  const SphericalDensity f = constant_density(2);
  CHECK(analytic_deriv_odd(f, 1, idx2(4, 0), vec2(0, 1), 8) ==
        doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("subsphere-moment derivatives are (-1)-homogeneous") {
  const SphericalDensity f = smooth_positive();
  const Eigen::VectorXd x = vec3(0.3, -0.5, 0.81);
  const double v1 = analytic_deriv_odd(f, 0, idx3(1, 1, 0), x, 24);
  const double v3 = analytic_deriv_odd(f, 0, idx3(1, 1, 0), (3.0 * x).eval(), 24);
  CHECK(v3 == doctest::Approx(v1 / 3.0).epsilon(1e-12));
}

TEST_CASE("subsphere-moment derivative agrees with finite differences") {
  const SphericalDensity f = smooth_positive();
  const Eigen::VectorXd x = vec3(0.3, -0.5, 0.81);
  for (const MultiIndex& alpha :
       {idx3(2, 0, 0), idx3(1, 1, 0), idx3(0, 0, 2)}) {
    const double analytic = analytic_deriv_odd(f, 0, alpha, x, 32);
    const double fd = finite_diff(
        [&](const Eigen::VectorXd& y) { return axis_transform(f, 1.0, 32, y); },
        alpha, x);
    CHECK(analytic == doctest::Approx(fd).epsilon(2e-4));
  }
}

TEST_CASE("subsphere-moment derivative input validation") {
  const SphericalDensity f = constant_density(3);
  CHECK_THROWS_AS(analytic_deriv_odd(f, 0, idx3(2, 1, 0), vec3(0, 0, 1), 8),
                  std::invalid_argument);  // |alpha| != 2k+2
  CHECK_THROWS_AS(analytic_deriv_odd(f, -1, idx3(0, 0, 0), vec3(0, 0, 1), 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      analytic_deriv_odd(f, 0, idx3(2, 0, 0), Eigen::VectorXd::Zero(3), 8),
      std::invalid_argument);
  std::vector<Atom> gens(1);
  gens[0].direction = vec3(0, 0, 1);
  gens[0].weight = 1.0;
  const SphericalDensity atoms = SphericalDensity::atoms(3, gens);
  CHECK_THROWS_AS(analytic_deriv_odd(atoms, 0, idx3(2, 0, 0), vec3(1, 0, 0), 8),
                  std::domain_error);
}

TEST_CASE("power-kernel second derivatives of the flat density") {
  const SphericalDensity f = constant_density(3);
  // p = 3: -(C_3/C_1) * integral |xi_3| xi_1^2 = 6 * pi/2.
  CHECK(analytic_deriv_frac(f, 3.0, idx3(2, 0, 0), vec3(0, 0, 1), 16) ==
        doctest::Approx(3.0 * kPi).epsilon(1e-12));
  // p = 5/2: -(C_{5/2}/C_{1/2}) * integral |xi_3|^{1/2} xi_1^2 = 20 pi / 7.
  CHECK(analytic_deriv_frac(f, 2.5, idx3(2, 0, 0), vec3(0, 0, 1), 16) ==
        doctest::Approx(20.0 * kPi / 7.0).epsilon(1e-12));
}

TEST_CASE("power-kernel derivatives agree with finite differences") {
  const SphericalDensity f = smooth_positive();
  const Eigen::VectorXd x = vec3(0.4, 0.2, -0.89);
  for (double p : {1.5, 2.5, 3.5}) {
    for (const MultiIndex& alpha : {idx3(2, 0, 0), idx3(1, 1, 0)}) {
      const double analytic = analytic_deriv_frac(f, p, alpha, x, 32);
      const double fd = finite_diff(
          [&](const Eigen::VectorXd& y) { return axis_transform(f, p, 32, y); },
          alpha, x);
      CAPTURE(p);
      CHECK(analytic == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("power-kernel derivatives are (p - |alpha|)-homogeneous") {
  const SphericalDensity f = smooth_positive();
  const Eigen::VectorXd x = vec3(0.1, 0.7, -0.7);
  const double p = 2.5;
  const double v1 = analytic_deriv_frac(f, p, idx3(0, 2, 0), x, 24);
  const double v3 =
      analytic_deriv_frac(f, p, idx3(0, 2, 0), (3.0 * x).eval(), 24);
  CHECK(v3 == doctest::Approx(std::pow(3.0, p - 2.0) * v1).epsilon(1e-12));
}

TEST_CASE("power-kernel derivative preconditions") {
  const SphericalDensity f = constant_density(3);
  const Eigen::VectorXd e3 = vec3(0, 0, 1);
  // Odd or tiny |alpha|.
  CHECK_THROWS_AS(analytic_deriv_frac(f, 2.5, idx3(1, 0, 0), e3, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(analytic_deriv_frac(f, 2.5, idx3(1, 1, 1), e3, 8),
                  std::invalid_argument);
  // p at or below 1 and even integer p.
  CHECK_THROWS_AS(analytic_deriv_frac(f, 1.0, idx3(2, 0, 0), e3, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(analytic_deriv_frac(f, 2.0, idx3(2, 0, 0), e3, 8),
                  std::invalid_argument);
  // Order beyond the formula's reach.
  CHECK_THROWS_AS(analytic_deriv_frac(f, 2.5, idx3(2, 2, 0), e3, 8),
                  std::invalid_argument);
  // Odd integer p at the critical order redirects to the subsphere path.
  CHECK_THROWS_AS(analytic_deriv_frac(f, 3.0, idx3(2, 2, 0), e3, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(analytic_deriv_frac(f, 2.5, idx3(2, 0, 0),
                                      Eigen::VectorXd::Zero(3), 8),
                  std::invalid_argument);
}

TEST_CASE("gradient of the transform power: flat density at an axis") {
  const SphericalDensity f = constant_density(3);
  const Eigen::VectorXd g = grad_Hp(f, 3.0, vec3(0, 0, 1), 16);
  // Tangential components cancel bitwise over the rule's 4-node blocks.
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == doctest::Approx(3.0 * kPi).epsilon(1e-12));
}

TEST_CASE("gradient satisfies the Euler identity for homogeneous functions") {
  // <grad H^p(u), u> = p H^p(u).
  struct Case {
    SphericalDensity f;
    double p;
    Eigen::VectorXd u;
  };
  std::vector<Case> cases;
  cases.push_back({bump_density(1.0, 0.4, 2), 2.5, vec2(0.8, -0.6)});
  cases.push_back({smooth_positive(), 3.0, vec3(0.3, -0.5, 0.81)});
  cases.push_back({smooth_positive(), 1.7, vec3(-0.2, 0.9, 0.4)});
  for (const auto& c : cases) {
    const Eigen::VectorXd g = grad_Hp(c.f, c.p, c.u, 24);
    const double hp = axis_transform(c.f, c.p, 24, c.u);
    CHECK(g.dot(c.u) == doctest::Approx(c.p * hp).epsilon(1e-12));
  }
}

TEST_CASE("first-power gradient converges despite the sign kernel") {
  // At p = 1 the reduced radial integrand has a square-root branch point,
  // so the rule converges algebraically rather than exactly.
  const SphericalDensity f = constant_density(3);
  const Eigen::VectorXd g64 = grad_Hp(f, 1.0, vec3(0, 0, 1), 64);
  CHECK(g64[0] == 0.0);
  CHECK(g64[1] == 0.0);
  CHECK(g64[2] == doctest::Approx(2.0 * kPi).epsilon(1e-4));
  // Doubling the level shrinks the error (algebraic, not spectral, decay).
  const Eigen::VectorXd g128 = grad_Hp(f, 1.0, vec3(0, 0, 1), 128);
  CHECK(std::abs(g128[2] - 2.0 * kPi) < std::abs(g64[2] - 2.0 * kPi));

  const SphericalDensity s = smooth_positive();
  const Eigen::VectorXd u = vec3(0.3, -0.5, 0.81);
  const Eigen::VectorXd gs = grad_Hp(s, 1.0, u, 128);
  const double h1 = axis_transform(s, 1.0, 128, u);
  CHECK(gs.dot(u) == doctest::Approx(h1).epsilon(1e-4));
}

TEST_CASE("transform-power Hessian: closed form at an axis") {
  const SphericalDensity f = constant_density(3);
  const Eigen::MatrixXd h = hessian_Hp(f, 3.0, vec3(0, 0, 1), 16);
  CHECK(h(0, 0) == doctest::Approx(3.0 * kPi).epsilon(1e-12));
  CHECK(h(1, 1) == doctest::Approx(3.0 * kPi).epsilon(1e-12));
  CHECK(h(2, 2) == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(std::abs(h(0, 1)) < 1e-13);
  CHECK(std::abs(h(0, 2)) < 1e-13);
  CHECK(std::abs(h(1, 2)) < 1e-13);
}

TEST_CASE("transform-power Hessian trace identity") {
  // trace Hess(H^p)(u) = p (p-1) |u|^{p-2} integral |<u^, xi>|^{p-2} f.
  const SphericalDensity f = smooth_positive();
  const double p = 2.5;
  const Eigen::VectorXd u = vec3(0.6, 0.3, -0.74);
  const Eigen::MatrixXd h = hessian_Hp(f, p, u, 24);
  const QuadratureRule rule = weighted_axis_rule(u, p - 2.0, 24);
  const double mass =
      integrate(rule, [&](const Eigen::VectorXd& xi) { return f(xi); });
  const double expect =
      p * (p - 1.0) * std::pow(u.norm(), p - 2.0) * mass;
  CHECK(h.trace() == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("Hessian applied to the base point matches the gradient scaling") {
  // H^p is p-homogeneous, so its gradient is (p-1)-homogeneous and
  // Hess(H^p)(u) u = (p - 1) grad H^p(u).
  const SphericalDensity f = smooth_positive();
  const double p = 3.0;
  const Eigen::VectorXd u = vec3(0.5, -0.2, 0.84);
  const Eigen::MatrixXd h = hessian_Hp(f, p, u, 24);
  const Eigen::VectorXd g = grad_Hp(f, p, u, 24);
  const Eigen::VectorXd lhs = h * u;
  const Eigen::VectorXd rhs = (p - 1.0) * g;
  CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("transform-power Hessian rejects unsupported exponents") {
  const SphericalDensity f = constant_density(3);
  CHECK_THROWS_AS(hessian_Hp(f, 1.0, vec3(0, 0, 1), 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(hessian_Hp(f, 2.0, vec3(0, 0, 1), 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(hessian_Hp(f, 4.0, vec3(0, 0, 1), 8),
                  std::invalid_argument);
}

TEST_CASE("first-power support Hessian of the flat density") {
  const SphericalDensity f = constant_density(3);
  const Eigen::MatrixXd h = hessian_H_p1(f, vec3(0, 0, 1), 16);
  CHECK(h(0, 0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(h(1, 1) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  // The radial row and column vanish identically at a coordinate axis.
  CHECK(h(2, 2) == 0.0);
  CHECK(h(0, 2) == 0.0);
  CHECK(h(2, 0) == 0.0);
}

TEST_CASE("support Hessian of a round body is the tangential projector") {
  // On the circle with the flat density, H(u) = (8/3)^{1/3} |u|, so
  // Hess H(u) = (8/3)^{1/3} (I - u u^T) at unit u.
  const SphericalDensity f = constant_density(2);
  const Eigen::MatrixXd h = hessian_H(f, 3.0, vec2(0, 1), 16);
  CHECK(h(0, 0) == doctest::Approx(std::cbrt(8.0 / 3.0)).epsilon(1e-12));
  CHECK(std::abs(h(1, 1)) < 1e-12);
  CHECK(std::abs(h(0, 1)) < 1e-12);
}

TEST_CASE("support Hessian annihilates the radial direction") {
  const SphericalDensity f = smooth_positive();
  const Eigen::VectorXd u = vec3(0.3, -0.5, 0.81);
  const Eigen::MatrixXd h = hessian_H(f, 2.5, u, 24);
  CHECK((h * u).norm() <= 1e-8 * h.norm() * u.norm());
}

TEST_CASE("support Hessian agrees with finite differences of the support") {
  const SphericalDensity f = smooth_positive();
  const double p = 2.5;
  const Eigen::VectorXd u = vec3(0.4, 0.7, 0.59);
  const Eigen::MatrixXd h = hessian_H(f, p, u, 32);
  TransformSpec spec;
  spec.p = p;
  spec.dim = 3;
  spec.level = 32;
  auto support = [&](const Eigen::VectorXd& y) {
    return support_value(f, spec, y);
  };
  CHECK(h(0, 0) ==
        doctest::Approx(finite_diff(support, idx3(2, 0, 0), u)).epsilon(1e-5));
  CHECK(h(0, 1) ==
        doctest::Approx(finite_diff(support, idx3(1, 1, 0), u)).epsilon(1e-5));
  CHECK(h(2, 2) ==
        doctest::Approx(finite_diff(support, idx3(0, 0, 2), u)).epsilon(1e-5));
}

TEST_CASE("support Hessian rejects sign-degenerate densities") {
  const SphericalDensity neg = SphericalDensity::custom(
      3, [](const Eigen::VectorXd&) { return -1.0; }, true);
  CHECK_THROWS_AS(hessian_H(neg, 2.5, vec3(0, 0, 1), 8), std::domain_error);
}

TEST_CASE("power-kernel derivative and Hessian assembly are consistent") {
  const SphericalDensity f = smooth_positive();
  const double p = 2.5;
  const Eigen::VectorXd u = vec3(0.4, -0.3, 0.87);
  const Eigen::MatrixXd h = hessian_Hp(f, p, u, 24);
  CHECK(analytic_deriv_frac(f, p, idx3(2, 0, 0), u, 24) ==
        doctest::Approx(h(0, 0)).epsilon(1e-12));
  CHECK(analytic_deriv_frac(f, p, idx3(0, 0, 2), u, 24) ==
        doctest::Approx(h(2, 2)).epsilon(1e-12));
}

TEST_CASE("gradient components obey the Cauchy-Schwarz moment bound") {
  // (grad H^p)_i^2 <= (p/(p-1)) Hess(H^p)_ii H^p for nonnegative densities,
  // by Cauchy-Schwarz against the measure |<u,xi>|^{p-2} f dxi.
  const SphericalDensity f = smooth_positive();
  const double p = 2.5;
  for (const Eigen::VectorXd& u :
       {vec3(0, 0, 1), vec3(0.3, -0.5, 0.81), vec3(0.7, 0.7, 0.14)}) {
    const Eigen::VectorXd g = grad_Hp(f, p, u, 24);
    const Eigen::MatrixXd h = hessian_Hp(f, p, u, 24);
    const double hp = axis_transform(f, p, 24, u);
    for (int i = 0; i < 3; ++i) {
      CHECK(g[i] * g[i] <=
            (p / (p - 1.0)) * h(i, i) * hp * (1.0 + 1e-10) + 1e-14);
    }
  }
}

TEST_CASE("second-derivative reports cross-validate both methods") {
  const SphericalDensity f = smooth_positive();
  const double p = 2.5;
  const Eigen::VectorXd u = vec3(0.3, -0.5, 0.81);
  const HessianReport analytic = hessian_report(f, p, u, 32, "analytic");
  const HessianReport fd = hessian_report(f, p, u, 32, "finite-difference");
  CHECK(analytic.method == "analytic");
  CHECK(fd.method == "finite-difference");
  CHECK(analytic.value_Hp == doctest::Approx(fd.value_Hp).epsilon(1e-12));
  CHECK((analytic.gradient_Hp - fd.gradient_Hp).norm() <=
        1e-6 * analytic.gradient_Hp.norm());
  CHECK((analytic.hessian_Hp - fd.hessian_Hp).norm() <=
        1e-4 * analytic.hessian_Hp.norm());
  CHECK((analytic.hessian_H - fd.hessian_H).norm() <=
        1e-4 * analytic.hessian_H.norm() + 1e-10);
  CHECK(analytic.euler_defect < 1e-12);
  CHECK_THROWS_AS(hessian_report(f, p, u, 16, "nosuch"),
                  std::invalid_argument);
}
