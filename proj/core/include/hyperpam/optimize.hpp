#pragma once

#include <functional>

namespace hyperpam {

using ScalarFunction = std::function<double(double)>;

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
/// Stops once the bracket width is below relative_tolerance * |hi|.
double bisect_root(const ScalarFunction& f, double lo, double hi,
                   double relative_tolerance = 1e-12, int max_iterations = 400);

/// Smallest hi = start * factor^k (k >= 0) with predicate(hi) true.
/// Throws std::runtime_error after max_steps expansions.
double expand_until(const std::function<bool(double)>& predicate, double start,
                    double factor = 2.0, int max_steps = 200);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Local maximum of f on [lo, hi] (Brent's golden-section/parabolic search).
Extremum maximize_bracketed(const ScalarFunction& f, double lo, double hi, int bits = 40);

/// Global maximum of f over [lo, hi]: scan `grid_points` points spaced
/// uniformly in log(x), then refine around the best grid point.
/// Requires 0 < lo < hi.
Extremum maximize_log_grid(const ScalarFunction& f, double lo, double hi, int grid_points);

/// Least-squares slope and intercept of y against x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LinearFit fit_line(const double* x, const double* y, std::size_t count);

}  // namespace hyperpam
