#include "hyperpam/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hyperpam/brownian.hpp"
#include "hyperpam/errors.hpp"
#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/stats.hpp"

namespace hyperpam {

namespace {

// log(2 sinh u) for u > 0.
double log_two_sinh(double u) { return u + std::log1p(-std::exp(-2.0 * u)); }

}  // namespace

double sphere_average(const RadialProfile& f, double a_t, double rho_t, double sqrt_K,
                      const QuadratureSpec& quad) {
  if (a_t <= 0.0) return f(rho_t / sqrt_K);
  if (rho_t <= 0.0) return f(a_t / sqrt_K);
  const double lo = std::abs(a_t - rho_t);
  const double hi = a_t + rho_t;
  switch (f.kind()) {
    case RadialProfile::Kind::Constant: return f.level();
    case RadialProfile::Kind::BallIndicator: {
      const double R = sqrt_K * f.radius();
      if (R >= hi) return f.level();
      if (R <= lo) return 0.0;
      // (cosh R - cosh lo) / (2 sinh a sinh rho), with
      // cosh R - cosh lo = 2 sinh((R+lo)/2) sinh((R-lo)/2).
      const double log_num = log_two_sinh(0.5 * (R + lo)) + log_two_sinh(0.5 * (R - lo)) - std::log(2.0);
      const double log_den = log_two_sinh(a_t) + log_two_sinh(rho_t) - std::log(2.0);
      return f.level() * std::exp(log_num - log_den);
    }
    default: break;
  }
  // Generic: (1 / (2 sinh a sinh rho)) int_lo^hi f(s) sinh s ds, scaled by e^{-hi}.
  std::vector<double> pts{lo, hi};
  for (double b : f.breakpoints()) {
    const double bt = sqrt_K * b;
    if (bt > lo && bt < hi) pts.push_back(bt);
  }
  auto integrand = [&](double s) {
    return f(s / sqrt_K) * 0.5 * (std::exp(s - hi) - std::exp(-s - hi));
  };
  const double num = integrate(integrand, pts, quad).value;
  const double den = 0.5 * (1.0 - std::exp(-2.0 * a_t)) * (1.0 - std::exp(-2.0 * rho_t));
  return num / den;
}

SemigroupValue heat_semigroup_apply(double t, const RadialProfile& u0, const ModelPoint& center,
                                    const ModelPoint& x, SemigroupMethod method,
                                    const QuadratureSpec& quad, const SemigroupMcOptions& mc) {
  if (!(t > 0.0)) throw DomainError("heat_semigroup_apply: t must be > 0");
  const double K = x.curvature();
  const double offset = distance(center, x);
  if (method == SemigroupMethod::MonteCarlo) {
    const std::size_t steps = step_count(t, mc.dt);
    Rng rng(mc.seed);
    GeodesicWalker walker(x.dim(), K);
    RunningStats stats;
    std::vector<double> pos;
    for (std::size_t i = 0; i < mc.n_paths; ++i) {
      pos.assign(x.coords().begin(), x.coords().end());
      for (std::size_t k = 1; k <= steps; ++k) {
        const double h = (k == steps) ? t - static_cast<double>(steps - 1) * mc.dt : mc.dt;
        walker.step(pos, h, rng);
      }
      stats.push(u0(distance(pos, center.coords(), K)));
    }
    return {stats.mean(), stats.stderr_of_mean()};
  }

  if (x.dim() != 3) throw ModeError("heat_semigroup_apply: quadrature needs the exact n = 3 kernel");
  const double sk = std::sqrt(K);
  const double tt = K * t;
  const double a = sk * offset;
  const double log_pref = std::log(4.0 * std::numbers::pi) - 1.5 * std::log(4.0 * std::numbers::pi * tt) - tt;
  auto radial_weight = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double log_sinh = log_two_sinh(rho) - std::log(2.0);
    return std::exp(log_pref + std::log(rho) + log_sinh - rho * rho / (4.0 * tt));
  };
  auto integrand = [&](double rho) {
    const double w = radial_weight(rho);
    if (w == 0.0) return 0.0;
    return w * sphere_average(u0, a, rho, sk, quad);
  };

  const double support = sk * u0.support_radius();
  if (support == 0.0) return {0.0, 0.0};
  const double width = std::sqrt(tt);
  std::vector<double> pts{0.0, 2.0 * width, 2.0 * tt, 2.0 * tt + 4.0 * width, 2.0 * tt + 10.0 * width};
  std::vector<double> profile_pts{support};
  for (double b : u0.breakpoints()) profile_pts.push_back(sk * b);
  for (double b : profile_pts) {
    if (!std::isfinite(b)) continue;
    pts.push_back(std::abs(a - b));
    pts.push_back(a + b);
  }
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  if (std::isfinite(support)) {
    lo = std::max(0.0, a - support);
    hi = a + support;
  }
  std::vector<double> inside;
  for (double p : pts) {
    if (p >= lo && p <= hi) inside.push_back(p);
  }
  inside.push_back(lo);
  if (std::isfinite(hi)) inside.push_back(hi);
  std::sort(inside.begin(), inside.end());
  double total = integrate(integrand, inside, quad).value;
  if (!std::isfinite(hi)) total += integrate_to_infinity(integrand, inside.back(), quad, std::max(1.0, width)).value;
  return {total, 0.0};
}

SemigroupValue heat_semigroup_apply(double t, const RadialProfile& u0, const ModelPoint& x,
                                    SemigroupMethod method, const QuadratureSpec& quad,
                                    const SemigroupMcOptions& mc) {
  return heat_semigroup_apply(t, u0, x, x, method, quad, mc);
}

}  // namespace hyperpam
