#include "hyperpam/optimize.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyperpam/errors.hpp"

namespace hyperpam {

double bisect_root(const ScalarFunction& f, double lo, double hi, double relative_tolerance,
                   int max_iterations) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw std::invalid_argument("bisect_root: f(lo) and f(hi) have the same sign");
  }
  auto done = [relative_tolerance](double a, double b) {
    return std::abs(b - a) <= relative_tolerance * std::max(std::abs(a), std::abs(b));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iterations);
  const auto bracket = boost::math::tools::bisect(f, lo, hi, done, iters);
  return 0.5 * (bracket.first + bracket.second);
}

double expand_until(const std::function<bool(double)>& predicate, double start, double factor,
                    int max_steps) {
  double x = start;
  for (int k = 0; k <= max_steps; ++k) {
    if (predicate(x)) return x;
    x *= factor;
  }
  throw std::runtime_error("expand_until: predicate never satisfied");
}

Extremum maximize_bracketed(const ScalarFunction& f, double lo, double hi, int bits) {
  auto neg = [&f](double x) { return -f(x); };
  const auto [x, v] = boost::math::tools::brent_find_minima(neg, lo, hi, bits);
  return {x, -v};
}

Extremum maximize_log_grid(const ScalarFunction& f, double lo, double hi, int grid_points) {
  if (!(lo > 0.0) || !(hi > lo) || grid_points < 3) {
    throw std::invalid_argument("maximize_log_grid: need 0 < lo < hi and >= 3 points");
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  const double step = (lhi - llo) / (grid_points - 1);
  std::vector<double> values(static_cast<std::size_t>(grid_points));
  std::size_t best = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = (i == grid_points - 1) ? hi : std::exp(llo + step * i);
    values[static_cast<std::size_t>(i)] = f(x);
    if (values[static_cast<std::size_t>(i)] > values[best]) best = static_cast<std::size_t>(i);
  }
  const double a = llo + step * (best == 0 ? 0.0 : static_cast<double>(best) - 1.0);
  const double b = std::min(lhi, llo + step * (static_cast<double>(best) + 1.0));
  const auto in_log = [&f](double u) { return f(std::exp(u)); };
  Extremum refined = maximize_bracketed(in_log, a, b, 52);
  refined.x = std::exp(refined.x);
  const double grid_x = best + 1 == static_cast<std::size_t>(grid_points)
                            ? hi
                            : std::exp(llo + step * static_cast<double>(best));
  if (values[best] > refined.value) return {grid_x, values[best]};
  return refined;
}

LinearFit fit_line(const double* x, const double* y, std::size_t count) {
  if (count < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (count > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(count - 2) / sxx);
  }
  return fit;
}

}  // namespace hyperpam
