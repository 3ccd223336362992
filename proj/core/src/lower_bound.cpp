#include "hyperpam/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hyperpam/dirichlet.hpp"
#include "hyperpam/errors.hpp"

namespace hyperpam {

LowerBoundConstants LowerBoundConstants::from_ledger(int n, ConstantLedger& ledger) {
  LowerBoundConstants k;
  k.gbar = ledger.resolve(ledger_keys::kGbar, 1.0);
  k.dirichlet = ledger.resolve(ledger_keys::kDirichlet, flat_ball_eigenvalue(n),
                               "squared first zero of J_{n/2-1}");
  return k;
}

double q_lower(double r, int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k) {
  if (!(r > 0.0)) throw DomainError("q_lower: r must be > 0");
  if (p < 2) throw ConfigError("q_lower: p must be >= 2");
  const double eigen = dirichlet_eigenvalue_upper(r, spec.n, spec.K, k.dirichlet);
  if (beta == 0.0) return -eigen;
  const double kernel = fractional_kernel_lower(2.0 * spec.alpha, spec.n, spec.K, r, k.gbar);
  return beta * beta * (p - 1) * kernel - eigen;
}

double q_lower(double r, int p, double beta, const NoiseSpec& spec, ConstantLedger& ledger) {
  return q_lower(r, p, beta, spec, LowerBoundConstants::from_ledger(spec.n, ledger));
}

namespace {

double effective_r_max(double r_max, double K) {
  const double cap = 1e3 / std::sqrt(K);
  if (!(r_max > 0.0)) throw DomainError("q_sup: r_max must be > 0");
  return std::min(r_max, cap);
}

}  // namespace

QSup q_sup(int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max,
           int scan_points) {
  const double hi = effective_r_max(r_max, spec.K);
  const double lo = std::min(1e-8 / std::sqrt(spec.K), 1e-3 * hi);
  const Extremum best = maximize_log_grid([&](double r) { return q_lower(r, p, beta, spec, k); }, lo, hi,
                                          scan_points);
  return {best.x, best.value};
}

QSup q_sup(int p, double beta, const NoiseSpec& spec, ConstantLedger& ledger, double r_max,
           int scan_points) {
  return q_sup(p, beta, spec, LowerBoundConstants::from_ledger(spec.n, ledger), r_max, scan_points);
}

double lower_exponent(int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k,
                      double r_max) {
  const double floor = -0.25 * (spec.n - 1) * (spec.n - 1) * spec.K;
  return p * std::max(q_sup(p, beta, spec, k, r_max).value, floor);
}

double beta_critical(int p, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max) {
  auto gap = [&](double beta) { return q_sup(p, beta, spec, k, r_max).value; };
  const double hi = expand_until([&](double beta) { return gap(beta) > 0.0; }, 1.0);
  return bisect_root(gap, hi == 1.0 ? 0.0 : 0.5 * hi, hi, 1e-10);
}

double beta_critical(int p, const NoiseSpec& spec, ConstantLedger& ledger, double r_max) {
  return beta_critical(p, spec, LowerBoundConstants::from_ledger(spec.n, ledger), r_max);
}

int p_critical(double beta, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max) {
  if (!(beta > 0.0)) throw DomainError("p_critical: beta must be > 0");
  auto positive = [&](long long p) { return q_sup(static_cast<int>(p), beta, spec, k, r_max).value > 0.0; };
  if (positive(2)) return 2;
  long long lo = 2;
  long long hi = 4;
  while (!positive(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (1LL << 30)) throw DomainError("p_critical: no p below 2^30 gives a positive exponent");
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (positive(mid)) hi = mid;
    else lo = mid;
  }
  return static_cast<int>(hi);
}

int p_critical(double beta, const NoiseSpec& spec, ConstantLedger& ledger, double r_max) {
  return p_critical(beta, spec, LowerBoundConstants::from_ledger(spec.n, ledger), r_max);
}

std::string to_string(SlopeAxis axis) { return axis == SlopeAxis::Beta ? "beta" : "p"; }

SlopeReport asymptotic_slope_check(SlopeAxis axis, const std::vector<double>& grid, double fixed,
                                   const NoiseSpec& spec, const LowerBoundConstants& k, double r_max) {
  if (grid.size() < 3) throw DomainError("asymptotic_slope_check: need >= 3 grid points");
  const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
  // The p axis is measured in p(p-1), the quantity the exponent scales with.
  auto extent = [axis](double v) { return axis == SlopeAxis::P ? v * (v - 1.0) : v; };
  if (!(*lo_it > 0.0) || extent(*hi_it) / extent(*lo_it) < 10.0) {
    throw DomainError("asymptotic_slope_check: grid must be positive and span at least one decade");
  }
  SlopeReport rep;
  rep.axis = axis;
  rep.fixed = fixed;
  const double quarter = spec.n / 4.0;
  rep.regime_case = spec.alpha < quarter ? 'A' : (spec.alpha == quarter ? 'B' : 'C');
  const double e = 4.0 * spec.alpha - spec.n;

  std::vector<double> lx, ly, normalized;
  for (double param : grid) {
    const int p = axis == SlopeAxis::P ? static_cast<int>(std::lround(param)) : static_cast<int>(fixed);
    const double beta = axis == SlopeAxis::Beta ? param : fixed;
    const QSup sup = q_sup(p, beta, spec, k, r_max);
    const double floor = -0.25 * (spec.n - 1) * (spec.n - 1) * spec.K;
    const double exponent = p * std::max(sup.value, floor);
    rep.params.push_back(param);
    rep.exponents.push_back(exponent);
    rep.r_star.push_back(sup.r_star);
    if (exponent > 0.0) {
      lx.push_back(std::log(param));
      ly.push_back(std::log(exponent));
    }
    if (axis == SlopeAxis::P) normalized.push_back(exponent / (p * (p - 1.0)));
  }
  if (lx.size() >= 2) rep.fit = fit_line(lx.data(), ly.data(), lx.size());
  else rep.fit.slope = std::numeric_limits<double>::quiet_NaN();

  if (axis == SlopeAxis::Beta) {
    // Stated normalizations: beta^{2/(4a-n-2)} (A), beta^2 / ln^2 beta (B), beta^2 (C).
    // Balance beta^2 r^{4a-n} ~ c / r^2 gives exponent ~ beta^{4/(4a-n+2)} in case A.
    rep.stated_slope = rep.regime_case == 'A' ? 2.0 / (e - 2.0) : 2.0;
    rep.balance_slope = rep.regime_case == 'A' ? 4.0 / (e + 2.0) : 2.0;
    rep.normalized_spread = std::numeric_limits<double>::quiet_NaN();
    rep.asserted = rep.regime_case == 'C';
    rep.pass = rep.asserted && std::abs(rep.fit.slope - 2.0) <= 0.1;
  } else {
    rep.stated_slope = rep.regime_case == 'A' ? 1.0 + 1.0 / (e - 2.0) : 2.0;
    rep.balance_slope = rep.regime_case == 'A' ? 1.0 + 2.0 / (e + 2.0) : 2.0;
    const auto [mn, mx] = std::minmax_element(normalized.begin(), normalized.end());
    rep.normalized_spread = *mn > 0.0 ? *mx / *mn - 1.0 : std::numeric_limits<double>::infinity();
    rep.asserted = rep.regime_case == 'C';
    rep.pass = rep.asserted && rep.normalized_spread <= 0.1;
  }
  return rep;
}

void write_slope_csv(std::ostream& os, const SlopeReport& report) {
  os.precision(17);
  os << "# axis=" << to_string(report.axis) << " case=" << report.regime_case << " fixed=" << report.fixed
     << '\n';
  os << "# fitted_slope=" << report.fit.slope << " stderr=" << report.fit.slope_stderr
     << " stated_slope=" << report.stated_slope << " balance_slope=" << report.balance_slope << '\n';
  os << "# asserted=" << (report.asserted ? 1 : 0) << " pass=" << (report.pass ? 1 : 0);
  if (report.axis == SlopeAxis::P) os << " normalized_spread=" << report.normalized_spread;
  os << '\n';
  os << "param,exponent,r_star\n";
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    os << report.params[i] << ',' << report.exponents[i] << ',' << report.r_star[i] << '\n';
  }
}

}  // namespace hyperpam
