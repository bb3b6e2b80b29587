#include "doctest.h"

#include <spherelab/density.hpp>
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

SphericalDensity cube_atoms() {
  std::vector<Atom> gens(3);
  for (int i = 0; i < 3; ++i) {
    gens[i].direction = Eigen::VectorXd::Zero(3);
    gens[i].direction[i] = 1.0;
    gens[i].weight = 1.0;
  }
  return SphericalDensity::atoms(3, gens);
}
}  // namespace

TEST_CASE("transform spec validation") {
  TransformSpec spec;
  spec.p = 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.p = 1.0;
  spec.dim = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.dim = 3;
  spec.level = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.level = 8;
  CHECK_NOTHROW(spec.validate());

  spec.p = 2.0;
  CHECK(spec.p_is_even_integer());
  spec.p = 2.0 + 1e-12;
  CHECK(spec.p_is_even_integer());
  spec.p = 3.0;
  CHECK_FALSE(spec.p_is_even_integer());
  spec.p = 1.0;
  CHECK_FALSE(spec.p_is_even_integer());
  spec.p = 4.0;
  CHECK(spec.p_is_even_integer());
}

TEST_CASE("first-power transform of the flat circle density is 4") {
  const SphericalDensity f = constant_density(2);
  TransformSpec spec;
  spec.p = 1.0;
  spec.dim = 2;
  spec.level = 32;
  // The axis-adapted evaluation absorbs the kernel into the weights and is
  // exact here.
  CHECK(lp_cosine_axis(f, spec, vec2(1, 0)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  // The plain rule sees the kernel kink and converges more slowly.
  spec.level = 256;
  CHECK(lp_cosine(f, spec, vec2(1, 0)) ==
        doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("first-power transform of the flat sphere density is 2 pi") {
  const SphericalDensity f = constant_density(3);
  TransformSpec spec;
  spec.p = 1.0;
  spec.dim = 3;
  spec.level = 24;
  const Eigen::VectorXd x = vec3(0.3, -0.5, 0.81);
  CHECK(lp_cosine_axis(f, spec, x) / x.norm() ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(lp_cosine_axis(f, spec, vec3(0, 0, 1)) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
  spec.level = 256;
  CHECK(lp_cosine(f, spec, vec3(0, 0, 1)) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-4));
}

TEST_CASE("third-power transform of the flat circle density is 8/3") {
  const SphericalDensity f = constant_density(2);
  TransformSpec spec;
  spec.p = 3.0;
  spec.dim = 2;
  spec.level = 16;
  CHECK(lp_cosine_axis(f, spec, vec2(0, 1)) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(support_value(f, spec, vec2(0, 1)) ==
        doctest::Approx(std::cbrt(8.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("transform is homogeneous of degree p") {
  const SphericalDensity f =
      harmonic_density({{0, 0, 1.0}, {2, 0, 0.3}, {4, 2, 0.1}});
  TransformSpec spec;
  spec.p = 2.5;
  spec.dim = 3;
  spec.level = 24;
  const Eigen::VectorXd x = vec3(0.4, -0.7, 0.59);
  const double v1 = lp_cosine_axis(f, spec, x);
  const double v2 = lp_cosine_axis(f, spec, (2.0 * x).eval());
  CHECK(v2 == doctest::Approx(std::pow(2.0, spec.p) * v1).epsilon(1e-13));
}

TEST_CASE("both transform evaluations agree on smooth densities") {
  const SphericalDensity f = harmonic_density({{0, 0, 1.0}, {2, 0, 0.4}});
  TransformSpec spec;
  spec.p = 1.5;
  spec.dim = 3;
  spec.level = 96;
  const Eigen::VectorXd x = vec3(0.2, 0.5, -0.84);
  const double plain = lp_cosine(f, spec, x);
  spec.level = 24;
  const double axis = lp_cosine_axis(f, spec, x);
  CHECK(plain == doctest::Approx(axis).epsilon(1e-4));
}

TEST_CASE("transform at the origin is zero") {
  const SphericalDensity f = constant_density(3);
  TransformSpec spec;
  CHECK(lp_cosine(f, spec, Eigen::VectorXd::Zero(3)) == 0.0);
  CHECK(lp_cosine_axis(f, spec, Eigen::VectorXd::Zero(3)) == 0.0);
  CHECK(support_value(f, spec, Eigen::VectorXd::Zero(3)) == 0.0);
}

TEST_CASE("atomic densities are summed exactly and match the zonotope") {
  const SphericalDensity cube = cube_atoms();
  TransformSpec spec;
  spec.p = 1.0;
  spec.dim = 3;
  const Eigen::VectorXd x = vec3(1, 1, 1);
  CHECK(zonotope_support(cube, x) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(lp_cosine(cube, spec, x) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(lp_cosine_axis(cube, spec, x) ==
        doctest::Approx(3.0).epsilon(1e-15));
  // A single segment generator: support is |<u, x>|.
  std::vector<Atom> seg(1);
  seg[0].direction = vec3(0, 0, 1);
  seg[0].weight = 2.0;
  const SphericalDensity segment = SphericalDensity::atoms(3, seg);
  CHECK(zonotope_support(segment, vec3(0.3, 0.4, 0.5)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // Non-atomic input is rejected.
  CHECK_THROWS_AS(zonotope_support(constant_density(3), x),
                  std::invalid_argument);
}

TEST_CASE("support value throws when the power integral is not positive") {
  const SphericalDensity neg = SphericalDensity::custom(
      3, [](const Eigen::VectorXd&) { return -1.0; }, true);
  TransformSpec spec;
  spec.p = 1.5;
  CHECK_THROWS_AS(support_value(neg, spec, vec3(0, 0, 1)),
                  std::domain_error);
}

TEST_CASE("great-subsphere transform of the flat density is 2 pi") {
  const SphericalDensity f = constant_density(3);
  CHECK(radon(f, vec3(0, 0, 1), 16) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(radon(f, vec3(2, -1, 0.5), 16) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("great-subsphere transform respects the carrier geometry") {
  // xi_3^2 vanishes identically on the equator orthogonal to e_3.
  MultiIndex a(3);
  a << 0, 0, 2;
  const SphericalDensity f = monomial_density(3, a);
  CHECK(radon(f, vec3(0, 0, 1), 12) == 0.0);
  // And is bitwise even in the direction argument.
  const Eigen::VectorXd x = vec3(0.3, 0.8, -0.52);
  CHECK(radon(f, x, 12) == radon(f, (-x).eval(), 12));
}

TEST_CASE("great-subsphere transform input validation") {
  CHECK_THROWS_AS(radon(cube_atoms(), vec3(0, 0, 1), 8), std::domain_error);
  CHECK_THROWS_AS(radon(constant_density(3), Eigen::VectorXd::Zero(3), 8),
                  std::invalid_argument);
}

TEST_CASE("great-subsphere transform is self-dual on polynomials") {
  // <R f, g> = <f, R g> against the full-sphere inner product; both sides
  // are exact here because every integrand is a polynomial within the rule
  // degrees.
  MultiIndex a(3), b(3);
  a << 2, 0, 0;
  b << 0, 0, 4;
  const SphericalDensity f = monomial_density(3, a);
  const SphericalDensity g = monomial_density(3, b);
  const QuadratureRule outer = sphere_rule(3, 16);
  const double lhs = integrate(outer, [&](const Eigen::VectorXd& x) {
    return radon(f, x, 16) * g(x);
  });
  const double rhs = integrate(outer, [&](const Eigen::VectorXd& x) {
    return f(x) * radon(g, x, 16);
  });
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("odd density parts cannot contribute to the transform") {
  // exp(xi_1) symmetrizes to cosh(xi_1); the transforms must agree.
  const SphericalDensity raw = SphericalDensity::custom(
      3, [](const Eigen::VectorXd& xi) { return std::exp(xi[0]); });
  const SphericalDensity even = SphericalDensity::custom(
      3, [](const Eigen::VectorXd& xi) { return std::cosh(xi[0]); }, true);
  TransformSpec spec;
  spec.p = 1.5;
  spec.level = 20;
  const Eigen::VectorXd x = vec3(0.6, -0.3, 0.74);
  CHECK(lp_cosine_axis(raw, spec, x) ==
        doctest::Approx(lp_cosine_axis(even, spec, x)).epsilon(1e-13));
  CHECK(radon(raw, x, 20) ==
        doctest::Approx(radon(even, x, 20)).epsilon(1e-13));
}

TEST_CASE("grid densities converge to the atomic transform they sample") {
  // Three weighted segments on the circle, smeared onto angle grids by
  // splitting each mass between the two adjacent nodes.  The plain
  // transform of the grid density must approach the exact zonotope support.
  const std::vector<double> angles = {0.3, 1.1, 2.0};
  const std::vector<double> masses = {0.7, 1.2, 0.5};
  std::vector<Atom> gens(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    gens[i].direction = vec2(std::cos(angles[i]), std::sin(angles[i]));
    gens[i].weight = masses[i];
  }
  const SphericalDensity atomic = SphericalDensity::atoms(2, gens);

  const std::vector<Eigen::VectorXd> probes = {
      vec2(1, 0), vec2(std::cos(0.9), std::sin(0.9)),
      vec2(std::cos(2.4), std::sin(2.4))};

  auto grid_error = [&](int level) {
    const double w = kPi / level;
    Eigen::VectorXd samples = Eigen::VectorXd::Zero(2 * level);
    // Row index of the node at angle index k in [0, 2*level): pair leaders
    // carry k < level, antipodes the rest.
    auto row = [&](int k) {
      k %= 2 * level;
      return k < level ? 2 * k : 2 * (k - level) + 1;
    };
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double a = angles[i] * level / kPi;
      const int k0 = static_cast<int>(std::floor(a));
      const double frac = a - k0;
      samples[row(k0)] += masses[i] * (1.0 - frac) / w;
      samples[row(k0 + 1)] += masses[i] * frac / w;
    }
    const SphericalDensity grid = SphericalDensity::grid(2, level, samples);
    TransformSpec spec;
    spec.p = 1.0;
    spec.dim = 2;
    spec.level = level;
    double worst = 0.0;
    for (const auto& x : probes) {
      const double got = lp_cosine(grid, spec, x);
      const double expect = zonotope_support(atomic, x);
      worst = std::max(worst, std::abs(got - expect));
    }
    return worst;
  };

  const double e32 = grid_error(32);
  const double e128 = grid_error(128);
  CHECK(e128 < e32);
  CHECK(e128 < 1e-3);
}

TEST_CASE("cap-pair transform matches its closed form at the cap center") {
  // For the indicator of the symmetric cap pair of polar radius r, the
  // first-power transform at the center direction is 2 pi sin^2 r.
  const double r = 0.8;
  const SphericalDensity f = cap_indicator_density(3, r, vec3(0, 0, 1));
  const double expect = 2.0 * kPi * std::sin(r) * std::sin(r);
  TransformSpec spec;
  spec.p = 1.0;
  spec.dim = 3;
  spec.level = 160;  // indicator data converges only algebraically
  CHECK(lp_cosine_axis(f, spec, vec3(0, 0, 1)) ==
        doctest::Approx(expect).epsilon(0.05));
  CHECK(lp_cosine(f, spec, vec3(0, 0, 1)) ==
        doctest::Approx(expect).epsilon(0.05));
}
