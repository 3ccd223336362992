#include "hyperpam/covariance.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74's pchip.hpp calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <numbers>
#include <vector>

#include "hyperpam/errors.hpp"

namespace hyperpam {

double covariance_form(const RadialProfile& f, const RadialProfile& g, const NoiseSpec& spec,
                       const QuadratureSpec& quad) {
  spec.validate();
  if (spec.n != 3) throw ModeError("covariance_form: needs the exact n = 3 kernel");
  const double rf = f.support_radius();
  const double rg = g.support_radius();
  if (!std::isfinite(rf) || !std::isfinite(rg)) {
    throw ModeError("covariance_form: profiles must have bounded support");
  }
  if (rf == 0.0 || rg == 0.0) return 0.0;
  const double sk = std::sqrt(spec.K);
  const double order = 2.0 * spec.alpha;
  const double Rf = sk * rf;
  const double Rg = sk * rg;

  // A(s) = int_0^s G(sigma / sqrt K) sinh(sigma) d sigma on a uniform grid, then pchip.
  auto kernel_sinh = [&](double s) {
    if (s <= 0.0) return 0.0;
    return fractional_kernel(order, 3, spec.K, s / sk, HeatKernelMode::exact(), quad).value * std::sinh(s);
  };
  const double s_max = Rf + Rg;
  constexpr int nodes = 401;
  std::vector<double> s_grid(nodes), a_grid(nodes);
  for (int i = 0; i < nodes; ++i) s_grid[static_cast<std::size_t>(i)] = s_max * i / (nodes - 1);
  a_grid[0] = 0.0;
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    a_grid[i] = a_grid[i - 1] + integrate(kernel_sinh, s_grid[i - 1], s_grid[i], quad).value;
  }
  const boost::math::interpolators::pchip<std::vector<double>> antiderivative(std::move(s_grid),
                                                                               std::move(a_grid));
  auto A = [&](double s) { return s <= 0.0 ? 0.0 : antiderivative(std::min(s, s_max)); };

  auto breakpoints = [sk](const RadialProfile& p, double hi) {
    std::vector<double> pts{0.0};
    for (double b : p.breakpoints()) {
      if (sk * b > 0.0 && sk * b < hi) pts.push_back(sk * b);
    }
    pts.push_back(hi);
    return pts;
  };
  const std::vector<double> outer_pts = breakpoints(f, Rf);

  auto inner = [&](double r1) {
    if (r1 <= 0.0) return 0.0;
    auto integrand = [&](double r2) {
      if (r2 <= 0.0) return 0.0;
      return g(r2 / sk) * std::sinh(r2) * (A(r1 + r2) - A(std::abs(r1 - r2)));
    };
    std::vector<double> pts = breakpoints(g, Rg);
    if (r1 < Rg) pts.push_back(r1);
    std::sort(pts.begin(), pts.end());
    return f(r1 / sk) * std::sinh(r1) * integrate(integrand, pts, quad).value;
  };
  const double value = integrate(inner, outer_pts, quad).value;
  return 8.0 * std::numbers::pi * std::numbers::pi * value / (spec.K * spec.K * spec.K);
}

}  // namespace hyperpam
