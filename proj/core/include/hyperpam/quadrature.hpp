#pragma once

#include <functional>
#include <span>

namespace hyperpam {

/// Error-control contract shared by every improper integral in the library.
struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 1e-14;
  int max_subdivisions = 4000;

  /// Throws ConfigError unless both tolerances are > 0 and max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod integration over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(absolute_tolerance, relative_tolerance * |I|).
/// Integrable endpoint singularities are fine as long as f is finite at the
/// (open) Kronrod nodes. Throws QuadratureError when the budget runs out.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Same as integrate() but with interior breakpoints; each sub-interval is
/// seeded separately so discontinuities at the breakpoints cost nothing.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

/// Integral over [a, +inf) via x = a + scale * u / (1 - u).
QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureSpec& spec = {},
                                       double scale = 1.0);

/// Integral over (-inf, b] via x = b - scale * u / (1 - u).
QuadratureResult integrate_from_minus_infinity(const Integrand& f, double b,
                                               const QuadratureSpec& spec = {},
                                               double scale = 1.0);

}  // namespace hyperpam
