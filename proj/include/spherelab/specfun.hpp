#pragma once

#include <stdexcept>
#include <string>

namespace spherelab {

/// Thrown when an evaluation lands on (or within guard distance of) a pole.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& msg) : std::domain_error(msg) {}
};

/// Real Euler Gamma function, accurate to >= 12 significant digits on
/// [-10, 20] outside neighborhoods of the poles at nonpositive integers.
/// Throws PoleError if x is within 1e-12 of a nonpositive integer.
double gamma_fn(double x);

/// Natural log of |Gamma(x)| for x > 0 (helper for ratios of large values).
double log_gamma_pos(double x);

/// The normalization constant
///   C_t = 2^{t+1} * sqrt(pi) * Gamma((t+1)/2) / Gamma(-t/2),
/// defined for t > -1 except at even nonnegative integers, where the
/// denominator Gamma sits on a pole and the constant is undefined.
/// Throws PoleError at even nonnegative integers (within 1e-12) and
/// std::domain_error for t <= -1.
double c_const(double t);

/// C_t bundled with its argument, for reporting.
struct CtValue {
  double t = 0.0;
  double value = 0.0;
};

CtValue c_value(double t);

}  // namespace spherelab
