#include "hyperpam/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hyperpam/errors.hpp"
#include "hyperpam/optimize.hpp"
#include "hyperpam/specialfn.hpp"

namespace hyperpam {

Regime regime_of(double alpha, int n) {
  if (!dalang_check(alpha, n)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " violates the Dalang condition alpha > (n-2)/4 = " << (n - 2) / 4.0;
    throw ConfigError(msg.str());
  }
  const double quarter = n / 4.0;
  if (alpha < quarter) return Regime::Rough;
  if (alpha == quarter) return Regime::Critical;
  return Regime::Smooth;
}

int regime_index(Regime regime) { return static_cast<int>(regime); }

BoundConfig BoundConfig::from_ledger(const NoiseSpec& spec, double r, ConstantLedger& ledger) {
  BoundConfig cfg;
  cfg.spec = spec;
  cfg.r = r;
  cfg.C_chaos = ledger.resolve(ledger_keys::kChaos, 1.0);
  cfg.C_psi = ledger.resolve(ledger_keys::kPsi, 1.0);
  cfg.C_semigroup = ledger.resolve(ledger_keys::kSemigroup, 1.0);
  return cfg;
}

double BoundConfig::decay_rate() const {
  if (std::isinf(r)) return 0.0;
  return (spec.n - 1) * (spec.n - 1) * spec.K / (2.0 * std::max(2.0, r));
}

void BoundConfig::validate() const {
  spec.validate();
  regime_of(spec.alpha, spec.n);
  if (!(r >= 1.0)) throw ConfigError("bounds: r must lie in [1, +inf]");
  if (!(C_chaos > 0.0) || !(C_psi > 0.0) || !(C_semigroup > 0.0)) {
    throw ConfigError("bounds: constants must be > 0");
  }
}

double psi_upper(double t, const BoundConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("psi_upper: t must be > 0");
  const double K = cfg.spec.K;
  const double c2 = cfg.C_psi * cfg.C_psi;
  if (t > 0.5 / K) return c2 * std::pow(1.0 + K * t, -1.5);
  switch (cfg.regime()) {
    case Regime::Rough: return c2 * std::pow(t, 2.0 * cfg.spec.alpha - 0.5 * cfg.spec.n);
    case Regime::Critical: {
      const double l = std::log(t);
      return c2 * l * l;
    }
    case Regime::Smooth: return c2;
  }
  return c2;
}

double renewal_i1(double rho, const BoundConfig& cfg) {
  if (!(rho >= 0.0)) throw DomainError("renewal_i1: rho must be >= 0");
  const double a = 2.0 * cfg.spec.alpha - 0.5 * cfg.spec.n + 1.0;
  if (!(a > 0.0)) throw ConfigError("renewal_i1: needs alpha > (n-2)/4");
  const double c = 0.5 / cfg.spec.K;
  if (rho == 0.0) return std::pow(c, a) / a;
  return std::pow(rho, -a) * gamma_lower(a, rho * c);
}

double renewal_i2(double rho, const BoundConfig& cfg) {
  if (!(rho >= 0.0)) throw DomainError("renewal_i2: rho must be >= 0");
  const double c = 0.5 / cfg.spec.K;
  const double lc = std::log(c);
  if (rho == 0.0) return c * (lc * lc - 2.0 * lc + 2.0);
  // s = e^v: int_{-inf}^{ln c} v^2 e^{v - rho e^v} dv.
  auto integrand = [rho](double v) { return v * v * std::exp(v - rho * std::exp(v)); };
  const double split = std::min(lc, -std::log(std::max(rho, 1.0)));
  double total = integrate_from_minus_infinity(integrand, split, special_function_quadrature(), 4.0).value;
  if (lc > split) total += integrate(integrand, split, lc, special_function_quadrature()).value;
  return total;
}

double renewal_i2_majorant(double rho) {
  if (!(rho >= 0.0)) throw DomainError("renewal_i2_majorant: rho must be >= 0");
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  const double l = std::log(rho) + std::numbers::egamma;
  return (l * l + std::numbers::pi * std::numbers::pi / 6.0) / rho;
}

double renewal_i3(double rho, const BoundConfig& cfg) {
  if (!(rho >= 0.0)) throw DomainError("renewal_i3: rho must be >= 0");
  const double c = 0.5 / cfg.spec.K;
  if (rho == 0.0) return c;
  return -std::expm1(-rho * c) / rho;
}

double renewal_i4(double rho, const BoundConfig& cfg) {
  if (!(rho >= 0.0)) throw DomainError("renewal_i4: rho must be >= 0");
  const double K = cfg.spec.K;
  if (rho == 0.0) return 2.0 / (K * std::sqrt(1.5));
  const double y = rho / K;
  if (y <= 1.0) {
    // Through Gamma(-1/2, x) = 2 x^{-1/2} e^{-x} - 2 sqrt(pi) erfc(sqrt x), x = 3y/2. The
    // s^{-3/2} tail makes quadrature slow here; at larger y the closed form cancels.
    return 2.0 / K *
           (std::sqrt(2.0 / 3.0) * std::exp(-0.5 * y) -
            std::sqrt(std::numbers::pi * y) * std::exp(y) * std::erfc(std::sqrt(1.5 * y)));
  }
  // s = 1/2K + u.
  auto integrand = [K, rho](double u) { return std::pow(1.5 + K * u, -1.5) * std::exp(-rho * u); };
  const double tail = integrate_to_infinity(integrand, 0.0, special_function_quadrature(), 1.0 / (rho + K)).value;
  return std::exp(-0.5 * rho / K) * tail;
}

double f_profile(Regime regime, double rho, const BoundConfig& cfg) {
  if (regime != cfg.regime()) {
    std::ostringstream msg;
    msg << "f_profile: regime " << regime_index(regime) << " does not match alpha = " << cfg.spec.alpha
        << " (regime " << regime_index(cfg.regime()) << ")";
    throw ConfigError(msg.str());
  }
  const double tail = renewal_i4(rho, cfg);
  switch (regime) {
    case Regime::Rough: return renewal_i1(rho, cfg) + tail;
    case Regime::Critical: return renewal_i2(rho, cfg) + tail;
    case Regime::Smooth: return renewal_i3(rho, cfg) + tail;
  }
  return tail;
}

double theta_threshold(const BoundConfig& cfg) {
  return 1.0 / std::sqrt(cfg.C_chaos * f_profile(cfg.regime(), 0.0, cfg));
}

double theta(double beta, const BoundConfig& cfg) {
  if (!(beta >= 0.0)) throw DomainError("theta: beta must be >= 0");
  const Regime regime = cfg.regime();
  const double strength = cfg.C_chaos * beta * beta;
  if (strength * f_profile(regime, 0.0, cfg) <= 1.0) return 0.0;
  const double log_target = -std::log(strength);
  auto gap = [&](double rho) { return std::log(f_profile(regime, rho, cfg)) - log_target; };
  const double hi = expand_until([&](double rho) { return gap(rho) < 0.0; }, 1.0);
  return bisect_root(gap, 0.0, hi, 1e-12);
}

double upper_exponent(int p, double beta, const BoundConfig& cfg) {
  if (p < 2) throw ConfigError("upper_exponent: p must be >= 2");
  const double gap = std::isinf(cfg.r) ? 0.0
                                       : (cfg.spec.n - 1) * (cfg.spec.n - 1) * cfg.spec.K / std::max(2.0, cfg.r);
  return 0.5 * p * (theta(std::sqrt(p - 1.0) * beta, cfg) - gap);
}

double semigroup_decay_bound(double t, double r, double sup_norm, const BoundConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("semigroup_decay_bound: t must be > 0");
  if (!(r >= 1.0)) throw ConfigError("semigroup_decay_bound: r must lie in [1, +inf]");
  if (std::isinf(r)) return sup_norm;
  const double gap = (cfg.spec.n - 1) * (cfg.spec.n - 1) * cfg.spec.K;
  const double rate = r >= 2.0 ? gap / (2.0 * r) : gap / 4.0;
  return cfg.C_semigroup * std::exp(-rate * t) * sup_norm;
}

std::vector<BoundRow> bound_table(const std::vector<double>& betas, const std::vector<int>& ps,
                                  const BoundConfig& cfg) {
  cfg.validate();
  std::vector<BoundRow> rows;
  rows.reserve(betas.size() * ps.size());
  for (int p : ps) {
    for (double beta : betas) {
      BoundRow row;
      row.beta = beta;
      row.p = p;
      row.r = cfg.r;
      row.theta = theta(std::sqrt(p - 1.0) * beta, cfg);
      row.upper_exponent = upper_exponent(p, beta, cfg);
      row.regime = cfg.regime();
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
  os << "beta,p,r,theta,upper_exponent,regime\n";
  os.precision(17);
  for (const auto& row : rows) {
    os << row.beta << ',' << row.p << ',';
    if (std::isinf(row.r)) os << "inf";
    else os << row.r;
    os << ',' << row.theta << ',' << row.upper_exponent << ',' << regime_index(row.regime) << '\n';
  }
}

}  // namespace hyperpam
