#include "hyperpam/specialfn.hpp"

#include <cmath>
#include <sstream>

#include "hyperpam/errors.hpp"

namespace hyperpam {

QuadratureSpec special_function_quadrature() {
  QuadratureSpec q;
  q.relative_tolerance = 1e-13;
  q.absolute_tolerance = 1e-300;
  return q;
}

// All three functions integrate e^(s v - e^v) in the log variable v = ln t,
// which removes the t^(s-1) endpoint singularity and leaves a smooth
// integrand with doubly-exponential decay on the right.

double gamma_lower(double s, double x, const QuadratureSpec& quad) {
  if (!(s > 0.0)) {
    std::ostringstream msg;
    msg << "gamma_lower: s must be > 0, got " << s;
    throw DomainError(msg.str());
  }
  if (!(x >= 0.0)) throw DomainError("gamma_lower: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  auto integrand = [s](double v) { return std::exp(s * v - std::exp(v)); };
  const double upper = std::log(x);
  const double split = std::min(upper, 0.0);
  double total = integrate_from_minus_infinity(integrand, split, quad, 1.0 / s).value;
  if (upper > split) total += integrate(integrand, split, upper, quad).value;
  return total;
}

double gamma_upper(double s, double x, const QuadratureSpec& quad) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "gamma_upper: x must be > 0, got " << x;
    throw DomainError(msg.str());
  }
  if (!(s >= 0.0)) throw DomainError("gamma_upper: s must be >= 0");
  if (s == 0.0) return neg_ei(x, quad);
  auto integrand = [s](double v) { return std::exp(s * v - std::exp(v)); };
  const double lower = std::log(x);
  const double split = std::max(lower, std::log(std::max(s, 1.0)));
  double total = integrate_to_infinity(integrand, split, quad, 1.0).value;
  if (split > lower) total += integrate(integrand, lower, split, quad).value;
  return total;
}

double neg_ei(double x, const QuadratureSpec& quad) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "neg_ei: x must be > 0, got " << x;
    throw DomainError(msg.str());
  }
  auto integrand = [](double v) { return std::exp(-std::exp(v)); };
  const double lower = std::log(x);
  const double split = std::max(lower, 0.0);
  double total = integrate_to_infinity(integrand, split, quad, 1.0).value;
  if (split > lower) total += integrate(integrand, lower, split, quad).value;
  return total;
}

double log_dm_h(double t, double z, int n) {
  if (!(t > 0.0)) throw DomainError("dm_h: t must be > 0");
  if (!(z >= 0.0)) throw DomainError("dm_h: z must be >= 0");
  if (n < 2) throw DomainError("dm_h: dimension must be >= 2");
  const double nm1 = n - 1.0;
  return -0.5 * n * std::log(t) + 0.5 * (n - 3.0) * std::log1p(t + z) + std::log1p(z) -
         z * z / (4.0 * t) - nm1 * nm1 * t / 4.0 - nm1 * z / 2.0;
}

double dm_h(double t, double z, int n) { return std::exp(log_dm_h(t, z, n)); }

double log_r_over_sinh(double r) {
  const double a = std::abs(r);
  if (a < 1e-4) return -a * a / 6.0;
  if (a < 20.0) return std::log(a / std::sinh(a));
  // sinh a = e^a (1 - e^{-2a}) / 2
  return std::log(2.0 * a) - a - std::log1p(-std::exp(-2.0 * a));
}

}  // namespace hyperpam
