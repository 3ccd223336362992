#include "hyperpam/dirichlet.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <algorithm>
#include <cmath>

#include "hyperpam/brownian.hpp"
#include "hyperpam/errors.hpp"
#include "hyperpam/geometry.hpp"

namespace hyperpam {

double flat_ball_eigenvalue(int n) {
  if (n < 2) throw DomainError("flat_ball_eigenvalue: n must be >= 2");
  const double j = boost::math::cyl_bessel_j_zero(0.5 * n - 1.0, 1);
  return j * j;
}

double dirichlet_constant_term(double R, int n, double K) {
  if (!(R > 0.0)) throw DomainError("dirichlet: R must be > 0");
  if (!(K > 0.0)) throw DomainError("dirichlet: K must be > 0");
  const double sk = std::sqrt(K);
  const double coeff = 0.25 * (n - 2) * (n - 2) + 0.25;
  const double x = R * sk;
  // sqrt K / sinh(x), written to survive large x.
  const double inv_sinh = x > 700.0 ? 0.0 : sk / std::sinh(x);
  return 0.25 * (n - 1) * (n - 1) * K + coeff * (inv_sinh - 1.0 / (R * R));
}

double dirichlet_eigenvalue_upper(double R, int n, double K, double c) {
  if (!(R > 0.0)) throw DomainError("dirichlet_eigenvalue_upper: R must be > 0");
  if (!(c > 0.0)) throw DomainError("dirichlet_eigenvalue_upper: c must be > 0");
  return c / (R * R) + dirichlet_constant_term(R, n, K);
}

double dirichlet_eigenvalue_upper(double R, int n, double K, ConstantLedger& ledger) {
  const double c = ledger.resolve(ledger_keys::kDirichlet, flat_ball_eigenvalue(n),
                                  "squared first zero of J_{n/2-1}");
  return dirichlet_eigenvalue_upper(R, n, K, c);
}

SurvivalCurve ball_survival(double R, int n, double K, double t_end, double dt, std::size_t n_paths,
                            std::uint64_t seed) {
  if (!(R > 0.0)) throw DomainError("ball_survival: R must be > 0");
  const std::size_t steps = step_count(t_end, dt);
  SurvivalCurve curve;
  curve.n_paths = n_paths;
  curve.times.resize(steps);
  std::vector<std::size_t> alive(steps, 0);
  for (std::size_t k = 0; k < steps; ++k) curve.times[k] = std::min(t_end, static_cast<double>(k + 1) * dt);

  const ModelPoint origin = ModelPoint::basepoint(n, K);
  GeodesicWalker walker(n, K);
  std::vector<double> x;
  // cosh(sqrt K d) = sqrt K x0 for the basepoint, so the exit test is on x0 alone.
  const double x0_exit = std::cosh(std::sqrt(K) * R) / std::sqrt(K);
  for (std::size_t i = 0; i < n_paths; ++i) {
    Rng rng(stream_seed(seed, i));
    walker.reset();
    x.assign(origin.coords().begin(), origin.coords().end());
    for (std::size_t k = 0; k < steps; ++k) {
      const double h = curve.times[k] - (k == 0 ? 0.0 : curve.times[k - 1]);
      walker.step(x, h, rng);
      if (x[0] > x0_exit) break;
      ++alive[k];
    }
  }
  curve.fraction.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    curve.fraction[k] = static_cast<double>(alive[k]) / static_cast<double>(n_paths);
  }
  return curve;
}

LinearFit survival_decay_fit(const SurvivalCurve& curve, double t_lo, double t_hi) {
  std::vector<double> t;
  std::vector<double> log_s;
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    if (curve.times[k] >= t_lo && curve.times[k] <= t_hi && curve.fraction[k] > 0.0) {
      t.push_back(curve.times[k]);
      log_s.push_back(std::log(curve.fraction[k]));
    }
  }
  if (t.size() < 3) throw DomainError("survival_decay_fit: fewer than 3 usable points in the window");
  LinearFit fit = fit_line(t.data(), log_s.data(), t.size());
  fit.slope = -fit.slope;
  fit.intercept = -fit.intercept;
  return fit;
}

}  // namespace hyperpam
