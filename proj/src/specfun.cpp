#include "spherelab/specfun.hpp"

#include <cmath>
#include <cstdlib>

namespace spherelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
/// Relative error of the rational part is ~1e-15 over the right half line.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

/// Gamma(x) for x >= 0.5 by direct Lanczos evaluation.
double gamma_lanczos(double x) {
  double ser = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) ser += kLanczosCoef[k] / (x - 1.0 + k);
  const double base = x - 0.5 + kLanczosG;
  // Gamma(x) = sqrt(2 pi) * base^{x-1/2} * e^{-base} * ser
  return std::sqrt(2.0 * kPi) * std::pow(base, x - 0.5) * std::exp(-base) * ser;
}

/// sin(pi*x) with the argument reduced to [-1/2, 1/2] first, so accuracy does
/// not degrade near integer x (needed by the reflection formula).
double sin_pi(double x) {
  const double r = x - std::nearbyint(x);
  const double s = std::sin(kPi * r);
  const long long n = static_cast<long long>(std::llround(x - r));
  return (n % 2 == 0) ? s : -s;
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.5) {
    const double nearest = std::nearbyint(x);
    if (nearest <= 0.0 && std::abs(x - nearest) <= 1e-12)
      throw PoleError("gamma_fn: argument " + std::to_string(x) +
                      " is within 1e-12 of a nonpositive integer (pole)");
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return kPi / (sin_pi(x) * gamma_lanczos(1.0 - x));
  }
  return gamma_lanczos(x);
}

double log_gamma_pos(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma_pos: requires x > 0");
  double ser = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) ser += kLanczosCoef[k] / (x - 1.0 + k);
  const double base = x - 0.5 + kLanczosG;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(base) - base +
         std::log(ser);
}

double c_const(double t) {
  if (t <= -1.0)
    throw std::domain_error("c_const: requires t > -1, got " +
                            std::to_string(t));
  const double half = t / 2.0;
  const double nearest = std::nearbyint(half);
  if (nearest >= 0.0 && std::abs(half - nearest) <= 1e-12 &&
      std::abs(t - 2.0 * nearest) <= 2e-12)
    throw PoleError("c_const: undefined at even nonnegative t (got t = " +
                    std::to_string(t) + "); Gamma(-t/2) sits on a pole");
  // 2^{t+1} sqrt(pi) Gamma((t+1)/2) / Gamma(-t/2)
  return std::pow(2.0, t + 1.0) * std::sqrt(kPi) * gamma_fn((t + 1.0) / 2.0) /
         gamma_fn(-t / 2.0);
}

CtValue c_value(double t) { return CtValue{t, c_const(t)}; }

}  // namespace spherelab
