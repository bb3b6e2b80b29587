// spherelab: transforms, derivatives, and curvature of convex bodies induced
// by even densities on the sphere.
//
// Exit codes: 0 success; 2 configuration error; 3 mathematical domain or
// numerics error.  The verify command exits with the number of failed checks
// (capped at 100).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spherelab/convexity.hpp"
#include "spherelab/density.hpp"
#include "spherelab/derivatives.hpp"
#include "spherelab/harmonics.hpp"
#include "spherelab/io.hpp"
#include "spherelab/mesh.hpp"
#include "spherelab/quadrature.hpp"
#include "spherelab/specfun.hpp"
#include "spherelab/transforms.hpp"

using nlohmann::json;
using namespace spherelab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Options {
  RunConfig cfg;
  std::vector<std::string> at_raw;
  std::vector<std::string> tangent_raw;
  std::vector<std::string> param_raw;
  std::vector<int> alpha_raw;
  std::string kind = "cosine";  // transform: cosine | radon | support
};

Eigen::VectorXd parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      vals.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse coordinate '" + item + "' in '" + text +
                        "'");
    }
  }
  if (vals.empty()) throw ConfigError("empty point '" + text + "'");
  return Eigen::Map<Eigen::VectorXd>(vals.data(),
                                     static_cast<Eigen::Index>(vals.size()));
}

PresetParams parse_params(const std::vector<std::string>& raw) {
  PresetParams params;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("preset parameter '" + kv +
                        "' is not of the form name=v1,v2,...");
    const std::string key = kv.substr(0, eq);
    const Eigen::VectorXd v = parse_point(kv.substr(eq + 1));
    params[key] = std::vector<double>(v.data(), v.data() + v.size());
  }
  return params;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--dim", o.cfg.dim, "ambient dimension n (sphere S^{n-1})")
      ->capture_default_str();
  sub->add_option("--p", o.cfg.p, "transform exponent p >= 1")
      ->capture_default_str();
  sub->add_option("--level", o.cfg.level, "quadrature level")
      ->capture_default_str();
  sub->add_option("--grid", o.cfg.grid, "direction-grid size")
      ->capture_default_str();
  sub->add_option("--preset", o.cfg.preset,
                  "preset density name (constant, monomial, harmonic, bump, "
                  "vanishing_point, cap_indicator)");
  sub->add_option("--param", o.param_raw,
                  "preset parameter name=v1,v2,... (repeatable)");
  sub->add_option("--density", o.cfg.density_source,
                  "density as inline JSON ('{...}') or a JSON file path");
  sub->add_option("--at", o.at_raw,
                  "evaluation point x1,x2,... (repeatable)");
  sub->add_option("--alpha", o.alpha_raw,
                  "derivative multi-index, one exponent per coordinate")
      ->delimiter(',');
  sub->add_option("--out", o.cfg.out, "write the JSON report (or OBJ) here");
  sub->add_option("--seed", o.cfg.seed, "seed for randomized spot checks")
      ->capture_default_str();
}

void finalize_config(Options& o, const std::string& command) {
  o.cfg.command = command;
  o.cfg.preset_params = parse_params(o.param_raw);
  for (const std::string& s : o.at_raw) o.cfg.at.push_back(parse_point(s));
  if (!o.alpha_raw.empty()) {
    o.cfg.alpha.resize(static_cast<Eigen::Index>(o.alpha_raw.size()));
    for (std::size_t i = 0; i < o.alpha_raw.size(); ++i)
      o.cfg.alpha[static_cast<Eigen::Index>(i)] = o.alpha_raw[i];
  }
  o.cfg.validate();
}

void emit_report(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << std::endl;
  } else {
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot open '" + out + "' for writing");
    f << report.dump(2) << std::endl;
  }
}

bool is_odd_int(double p) {
  const double r = std::nearbyint(p);
  return std::abs(p - r) <= 1e-9 &&
         std::llabs(static_cast<long long>(r)) % 2 == 1;
}

// ---------------------------------------------------------------------------
// transform

int run_transform(const Options& o) {
  const SphericalDensity f = resolve_density(o.cfg);
  if (o.cfg.at.empty())
    throw ConfigError("the transform command needs at least one --at");
  TransformSpec spec{o.cfg.p, o.cfg.dim, o.cfg.level};
  json results = json::array();
  json residuals = json::array();
  for (const Eigen::VectorXd& x : o.cfg.at) {
    json r;
    r["at"] = vector_to_json(x);
    if (x.norm() == 0.0 && o.kind != "radon")
      r["warning"] = "zero vector: the transform vanishes there by "
                     "homogeneity and carries no directional information";
    if (o.kind == "cosine") {
      const double v = lp_cosine_axis(f, spec, x);
      r["value"] = v;
      if (f.kind() != SphericalDensity::Kind::Atoms && x.norm() > 0.0) {
        const double plain = lp_cosine(f, spec, x);
        r["plain_rule"] = plain;
        r["rule_residual"] = std::abs(v - plain);
        residuals.push_back(std::abs(v - plain));
      }
    } else if (o.kind == "radon") {
      r["value"] = radon(f, x, o.cfg.level);
    } else if (o.kind == "support") {
      const double h = support_value(f, spec, x);
      r["value"] = h;
      if (f.kind() == SphericalDensity::Kind::Atoms &&
          std::abs(o.cfg.p - 1.0) <= 1e-9) {
        const double z = zonotope_support(f, x);
        r["zonotope_support"] = z;
        r["rule_residual"] = std::abs(h - z);
        residuals.push_back(std::abs(h - z));
      }
    } else {
      throw ConfigError("unknown transform kind '" + o.kind + "'");
    }
    results.push_back(r);
  }
  json report;
  report["command"] = o.cfg.command;
  report["kind"] = o.kind;
  report["config"] = config_to_json(o.cfg);
  report["results"] = results;
  report["residuals"] = residuals;
  report["verdict"] = "ok";
  emit_report(report, o.cfg.out);
  return 0;
}

// ---------------------------------------------------------------------------
// derivative

int run_derivative(const Options& o) {
  const SphericalDensity f = resolve_density(o.cfg);
  const int order = multi_order(o.cfg.alpha);
  if (order < 2 || order % 2 != 0)
    throw std::domain_error(
        "derivative: closed forms exist for even total orders >= 2 only "
        "(odd-order derivatives of the even transform have no such form)");
  TransformSpec spec{o.cfg.p, o.cfg.dim, o.cfg.level};
  const bool odd_path =
      is_odd_int(o.cfg.p) && order == static_cast<int>(o.cfg.p) + 1;
  json results = json::array();
  json residuals = json::array();
  for (const Eigen::VectorXd& x : o.cfg.at) {
    if (x.norm() == 0.0)
      throw std::domain_error(
          "derivative: the transform is not smooth at the origin; pick a "
          "nonzero point");
    double value;
    std::string route;
    if (odd_path) {
      const int k = (static_cast<int>(o.cfg.p) - 1) / 2;
      value = analytic_deriv_odd(f, k, o.cfg.alpha, x, o.cfg.level);
      route = "subsphere-moment";
    } else {
      value = analytic_deriv_frac(f, o.cfg.p, o.cfg.alpha, x, o.cfg.level);
      route = "power-kernel-moment";
    }
    const double fd = finite_diff(
        [&](const Eigen::VectorXd& y) { return lp_cosine_axis(f, spec, y); },
        o.cfg.alpha, x);
    json r;
    r["at"] = vector_to_json(x);
    r["route"] = route;
    r["value"] = value;
    r["finite_difference"] = fd;
    r["residual"] = std::abs(value - fd);
    residuals.push_back(std::abs(value - fd));
    results.push_back(r);
  }
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double v = results[i]["value"].get<double>();
    const double res = results[i]["residual"].get<double>();
    worst_rel = std::max(worst_rel, res / std::max(1.0, std::abs(v)));
  }
  json report;
  report["command"] = o.cfg.command;
  report["config"] = config_to_json(o.cfg);
  report["results"] = results;
  report["residuals"] = residuals;
  report["verdict"] = worst_rel <= 1e-3 ? "consistent-with-finite-differences"
                                        : "finite-difference-mismatch";
  emit_report(report, o.cfg.out);
  return 0;
}

// ---------------------------------------------------------------------------
// curvature

int run_curvature(const Options& o) {
  const SphericalDensity f = resolve_density(o.cfg);
  Eigen::MatrixXd dirs;
  if (!o.cfg.at.empty()) {
    dirs.resize(static_cast<Eigen::Index>(o.cfg.at.size()), o.cfg.dim);
    for (std::size_t i = 0; i < o.cfg.at.size(); ++i) {
      if (o.cfg.at[i].norm() == 0.0)
        throw std::domain_error("curvature: directions must be nonzero");
      dirs.row(static_cast<Eigen::Index>(i)) = o.cfg.at[i].transpose();
    }
  } else {
    dirs = direction_grid(o.cfg.dim, o.cfg.grid);
  }
  const CurvatureReport rep = curvature_report(f, o.cfg.p, dirs, o.cfg.level);
  json results = json::array();
  for (Eigen::Index i = 0; i < dirs.rows(); ++i) {
    json r;
    r["direction"] = vector_to_json(dirs.row(i).transpose());
    r["support"] = rep.support[i];
    r["radii"] = vector_to_json(rep.radii.row(i).transpose());
    r["gauss_kronecker"] = rep.curvature_finite[i]
                               ? json(rep.curvature[i])
                               : json("infinite (flat direction)");
    results.push_back(r);
  }
  json report;
  report["command"] = o.cfg.command;
  report["config"] = config_to_json(o.cfg);
  report["results"] = results;
  report["min_radius"] = rep.min_radius;
  report["verdict"] =
      rep.all_positive ? "positively-curved" : "degenerate-or-flat";
  emit_report(report, o.cfg.out);
  return 0;
}

// ---------------------------------------------------------------------------
// lindquist criterion

int run_lindquist(const Options& o) {
  const SphericalDensity f = resolve_density(o.cfg);
  const double p = o.cfg.p;
  const bool p1 = std::abs(p - 1.0) <= 1e-9;
  std::vector<Eigen::VectorXd> tangents;
  for (const std::string& s : o.tangent_raw) tangents.push_back(parse_point(s));
  if (!tangents.empty() && tangents.size() != o.cfg.at.size())
    throw ConfigError("--tangent must be given once per --at (or not at all)");

  json results = json::array();
  bool all_positive = true;
  for (std::size_t i = 0; i < o.cfg.at.size(); ++i) {
    const Eigen::VectorXd& u = o.cfg.at[i];
    if (u.norm() == 0.0)
      throw std::domain_error("lindquist: directions must be nonzero");
    json r;
    r["at"] = vector_to_json(u);
    double crit;
    if (!tangents.empty()) {
      const Eigen::VectorXd& x = tangents[i];
      crit = p1 ? 0.5 * lindquist_1(f, u, x, o.cfg.level)
                : lindquist_p(f, p, u, x, o.cfg.level);
      r["tangent"] = vector_to_json(x);
      r["criterion"] = crit;
    } else {
      // Minimize the criterion quadratic form over unit tangent vectors:
      // the smallest tangential eigenvalue decides.
      const Eigen::VectorXd un = u / u.norm();
      const Eigen::MatrixXd frame = tangent_basis(canonical_direction(un));
      Eigen::MatrixXd form;
      if (p1) {
        form = 0.5 * frame.transpose() * hessian_H_p1(f, un, o.cfg.level) *
               frame;
      } else {
        form = frame.transpose() * hessian_Hp(f, p, un, o.cfg.level) * frame /
               (p * (p - 1.0));
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form);
      crit = es.eigenvalues().minCoeff();
      r["min_criterion"] = crit;
    }
    if (crit > 1e-9) {
      r["verdict"] = "positive";
    } else if (crit < -1e-9) {
      r["verdict"] = "negative";
      all_positive = false;
    } else {
      r["verdict"] = "indeterminate (within 1e-9 of zero)";
      all_positive = false;
    }
    results.push_back(r);
  }
  json report;
  report["command"] = o.cfg.command;
  report["config"] = config_to_json(o.cfg);
  report["results"] = results;
  report["verdict"] = all_positive ? "positive-at-all-points"
                                   : "not-positive-everywhere";
  emit_report(report, o.cfg.out);
  return 0;
}

// ---------------------------------------------------------------------------
// mesh

int run_mesh(const Options& o) {
  if (o.cfg.out.empty())
    throw ConfigError("the mesh command needs --out FILE.obj");
  const SphericalDensity f = resolve_density(o.cfg);
  const SurfaceMesh mesh =
      boundary_mesh(f, o.cfg.p, o.cfg.grid, o.cfg.level);
  write_obj(mesh, o.cfg.out);
  json report;
  report["command"] = o.cfg.command;
  report["config"] = config_to_json(o.cfg);
  report["vertices"] = mesh.vertices.rows();
  report["faces"] = mesh.faces.size();
  report["out"] = o.cfg.out;
  report["verdict"] = "ok";
  std::cout << report.dump(2) << std::endl;
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
};

void add_check(std::vector<Check>& out, const std::string& name,
               double measured, double expected, double tol) {
  Check c{name, measured, expected, tol, std::abs(measured - expected) <= tol};
  out.push_back(c);
}

void verify_derivatives(std::vector<Check>& out, int level, unsigned seed) {
  const SphericalDensity one = constant_density(3);
  const Eigen::Vector3d e3(0, 0, 1);
  MultiIndex a(3);
  a << 2, 0, 0;
  add_check(out, "second-derivative/p1-constant-density",
            analytic_deriv_odd(one, 0, a, e3, level), 2 * kPi, 1e-10);
  add_check(out, "second-derivative/p2.5-constant-density",
            analytic_deriv_frac(one, 2.5, a, e3, level), 20 * kPi / 7, 1e-10);
  add_check(out, "constant-ratio/p2.5",
            -c_const(2.5) / c_const(0.5), 2.5 * 1.5, 1e-10);

  // A smooth positive test density and a generic point.
  const SphericalDensity f = harmonic_density({{0, 0, 1.0}, {2, 0, 0.2}});
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::Vector3d x(gauss(rng), gauss(rng), gauss(rng));
  x.normalize();
  x *= 1.3;
  MultiIndex mixed(3);
  mixed << 1, 1, 0;
  TransformSpec spec{2.5, 3, level};
  const double v = analytic_deriv_frac(f, 2.5, mixed, x, level);
  const double fd = finite_diff(
      [&](const Eigen::VectorXd& y) { return lp_cosine_axis(f, spec, y); },
      mixed, x);
  add_check(out, "second-derivative/finite-difference-agreement", v, fd,
            std::max(1e-5, 1e-4 * std::abs(fd)));

  const Eigen::VectorXd g = grad_Hp(f, 3.0, x, level);
  const double hp = lp_cosine_axis(f, TransformSpec{3.0, 3, level}, x);
  add_check(out, "gradient/euler-identity", g.dot(x), 3.0 * hp,
            1e-11 * std::abs(hp));

  MultiIndex quart(3);
  quart << 2, 2, 0;
  const double d1 = analytic_deriv_odd(f, 1, quart, x, level);
  const double d2 = analytic_deriv_odd(f, 1, quart, 2 * x, level);
  add_check(out, "fourth-derivative/degree-minus-one-homogeneity", 2 * d2, d1,
            1e-11 * std::abs(d1));
}

void verify_inversion(std::vector<Check>& out, int level) {
  add_check(out, "cosine-multiplier/l2",
            transform_multiplier(SphereTransform::Cosine, 2, level).value,
            kPi / 2, 1e-8);
  add_check(out, "cosine-multiplier/l4",
            transform_multiplier(SphereTransform::Cosine, 4, level).value,
            -kPi / 12, 1e-8);
  add_check(out, "radon-multiplier/l2",
            transform_multiplier(SphereTransform::Radon, 2, level).value, -kPi,
            1e-8);
  const InversionCheck ic = inversion_ratio_check(6, level);
  add_check(out, "inversion-ratio/degree-spread", ic.spread, 0.0, 1e-8);
  add_check(out, "inversion-ratio/constant", ic.constant, 0.5, 1e-8);

  const SphericalDensity f = harmonic_density({{0, 0, 1.0}, {2, 0, 0.2}});
  const HarmonicSpectrum sp = project(f, 4, level);
  add_check(out, "projection/identity-l0", sp.coefficient(0, 0), 1.0, 1e-10);
  add_check(out, "projection/identity-l2", sp.coefficient(2, 0), 0.2, 1e-10);
  add_check(out, "projection/truncation-error", sp.reconstruction_error, 0.0,
            1e-10);
}

void verify_convexity(std::vector<Check>& out, int level, unsigned seed) {
  const SphericalDensity one = constant_density(3);
  std::mt19937 rng(seed + 1);
  std::normal_distribution<double> gauss;
  Eigen::Vector3d u(gauss(rng), gauss(rng), gauss(rng));
  u.normalize();

  const double c15 = std::pow(4 * kPi / 2.5, 1.0 / 1.5);
  const ReverseWeingarten rw15 = reverse_weingarten(one, 1.5, u, level);
  add_check(out, "round-body/radius-p1.5-min", rw15.radii.minCoeff(), c15,
            1e-8);
  add_check(out, "round-body/radius-p1.5-max", rw15.radii.maxCoeff(), c15,
            1e-8);
  const ReverseWeingarten rw1 = reverse_weingarten(one, 1.0, u, level);
  add_check(out, "round-body/radius-p1", rw1.radii.minCoeff(), 2 * kPi, 1e-8);
  add_check(out, "round-body/gauss-kronecker-p1",
            gauss_kronecker(rw1.radii).value, 1.0 / (4 * kPi * kPi), 1e-10);

  const SphericalDensity f = harmonic_density({{0, 0, 1.0}, {2, 0, 0.2}});
  const ConvexityReport rep = convexity_check(f, 2.5, 60, level);
  add_check(out, "convexity/positive-density-verdict", rep.convex ? 1.0 : 0.0,
            1.0, 0.0);

  // A density vanishing on the equator orthogonal to e1 flattens the induced
  // body there at p = 1; thickening the exponent restores curvature.
  Eigen::Vector2d e1(1, 0);
  const SphericalDensity vp = vanishing_point_density(2, 2.0, e1);
  const ReverseWeingarten flat = reverse_weingarten(vp, 1.0, e1, level);
  add_check(out, "flat-direction/p1-zero-radius", flat.radii[0], 0.0, 1e-9);
  const ReverseWeingarten thick = reverse_weingarten(vp, 1.5, e1, level);
  add_check(out, "flat-direction/p1.5-radius-positive",
            thick.radii[0] > 1e-4 ? 1.0 : 0.0, 1.0, 0.0);

  const SurfaceMesh mesh = boundary_mesh(one, 1.5, 60, level);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mesh.vertices.rows(); ++i)
    worst = std::max(worst, std::abs(mesh.vertices.row(i).norm() - c15));
  add_check(out, "mesh/round-body-vertex-radius", worst, 0.0, 1e-8);
}

int run_verify(const Options& o) {
  std::vector<Check> checks;
  const int level = o.cfg.level;
  if (o.cfg.suite == "derivatives" || o.cfg.suite == "all")
    verify_derivatives(checks, level, o.cfg.seed);
  if (o.cfg.suite == "inversion" || o.cfg.suite == "all")
    verify_inversion(checks, level);
  if (o.cfg.suite == "convexity" || o.cfg.suite == "all")
    verify_convexity(checks, level, o.cfg.seed);

  int fails = 0;
  json results = json::array();
  for (const Check& c : checks) {
    if (!c.pass) ++fails;
    std::printf("[%s] %-46s measured % .12g expected % .12g tol %.1e\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                c.expected, c.tol);
    json r;
    r["name"] = c.name;
    r["measured"] = c.measured;
    r["expected"] = c.expected;
    r["tol"] = c.tol;
    r["pass"] = c.pass;
    results.push_back(r);
  }
  std::printf("verify: %zu checks, %d failed\n", checks.size(), fails);

  json report;
  report["command"] = o.cfg.command;
  report["config"] = config_to_json(o.cfg);
  report["results"] = results;
  report["verdict"] = fails == 0 ? "all-checks-pass" : "checks-failed";
  if (!o.cfg.out.empty()) emit_report(report, o.cfg.out);
  return std::min(fails, 100);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spherelab: cosine and Radon transforms of even spherical densities, "
      "their closed-form derivatives, and curvature of the induced convex "
      "bodies"};
  app.require_subcommand(1);

  Options o;
  CLI::App* t = app.add_subcommand(
      "transform", "evaluate the |<x,.>|^p transform, Radon transform, "
                   "or support function");
  t->add_option("--kind", o.kind, "cosine | radon | support")
      ->check(CLI::IsMember({"cosine", "radon", "support"}))
      ->capture_default_str();
  add_common(t, o);

  CLI::App* d = app.add_subcommand(
      "derivative", "closed-form partial derivatives of the transform, "
                    "cross-checked against finite differences");
  add_common(d, o);

  CLI::App* c = app.add_subcommand(
      "curvature", "principal radii of curvature and Gauss-Kronecker "
                   "curvature over a direction grid");
  add_common(c, o);

  CLI::App* l = app.add_subcommand(
      "lindquist", "pointwise second-derivative positivity criterion at "
                   "given directions");
  l->add_option("--tangent", o.tangent_raw,
                "tangent vector per --at (optional; defaults to minimizing "
                "over the tangent space)");
  add_common(l, o);

  CLI::App* v = app.add_subcommand(
      "verify", "run built-in numerical cross-checks; exit code counts "
                "failures");
  v->add_option("--suite", o.cfg.suite,
                "derivatives | inversion | convexity | all")
      ->check(CLI::IsMember({"derivatives", "inversion", "convexity", "all"}))
      ->capture_default_str();
  add_common(v, o);

  CLI::App* m = app.add_subcommand(
      "mesh", "triangulate the induced body boundary and write an OBJ file");
  add_common(m, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (t->parsed()) {
      finalize_config(o, "transform");
      return run_transform(o);
    }
    if (d->parsed()) {
      finalize_config(o, "derivative");
      return run_derivative(o);
    }
    if (c->parsed()) {
      finalize_config(o, "curvature");
      return run_curvature(o);
    }
    if (l->parsed()) {
      finalize_config(o, "lindquist");
      return run_lindquist(o);
    }
    if (v->parsed()) {
      finalize_config(o, "verify");
      return run_verify(o);
    }
    if (m->parsed()) {
      finalize_config(o, "mesh");
      return run_mesh(o);
    }
    std::cerr << "error: no command given" << std::endl;
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
