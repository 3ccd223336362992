#include "hyperpam/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperpam/errors.hpp"
#include "hyperpam/specialfn.hpp"

namespace hyperpam {

bool dalang_check(double alpha, int n) { return alpha > (n - 2) / 4.0; }

bool NoiseSpec::dalang_ok() const { return dalang_check(alpha, n); }

void NoiseSpec::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("noise: alpha must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("noise: beta must be >= 0");
  if (!(K > 0.0) || !std::isfinite(K)) throw ConfigError("model: K must be > 0");
  if (n < 2) throw ConfigError("model: n must be >= 2");
}

namespace {

// log Gamma(s, x) that stays finite where Gamma(s, x) itself underflows.
// For large x uses Gamma(s, x) = x^s e^{-x} int_0^inf e^{-x w} (1 + w)^{s-1} dw.
double log_gamma_upper(double s, double x) {
  if (x < 30.0) return std::log(gamma_upper(s, x));
  auto integrand = [s, x](double w) { return std::exp(-x * w + (s - 1.0) * std::log1p(w)); };
  const double tail = integrate_to_infinity(integrand, 0.0, special_function_quadrature(), 1.0 / x).value;
  return s * std::log(x) - x + std::log(tail);
}

}  // namespace

KernelBracket fractional_kernel(double order, int n, double K, double d, const HeatKernelMode& mode,
                                const QuadratureSpec& quad) {
  if (!(order > 0.0)) throw DomainError("fractional_kernel: order must be > 0");
  if (!(K > 0.0)) throw DomainError("fractional_kernel: K must be > 0");
  if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("fractional_kernel: d must be finite and >= 0");
  if (d == 0.0 && order <= 0.5 * n) {
    std::ostringstream msg;
    msg << "fractional_kernel: divergent at d = 0 for order " << order << " <= n/2 = " << 0.5 * n;
    throw DivergenceError(msg.str());
  }
  const double log_gamma_order = std::lgamma(order);
  // v = ln t; dt t^{order-1} = e^{order v} dv.
  auto log_integrand = [&](double v) {
    const double t = std::exp(v);
    if (!(t > 0.0) || !std::isfinite(t)) return -std::numeric_limits<double>::infinity();
    return order * v + log_heat_kernel(t, d, n, K, mode) - log_gamma_order;
  };

  std::vector<double> pts{std::log(1.0 / K)};
  if (d > 0.0) pts.push_back(std::log(0.25 * d * d));
  std::sort(pts.begin(), pts.end());
  // Reference scale: the largest sampled log-integrand near the breakpoints.
  double log_ref = -std::numeric_limits<double>::infinity();
  for (double p : pts) {
    for (double off : {-4.0, -2.0, 0.0, 2.0}) log_ref = std::max(log_ref, log_integrand(p + off));
  }
  if (!std::isfinite(log_ref)) log_ref = 0.0;
  auto integrand = [&](double v) {
    const double lv = log_integrand(v) - log_ref;
    return lv < -745.0 ? 0.0 : std::exp(lv);
  };

  const double lo = pts.front() - 2.0;
  const double hi = pts.back() + 2.0;
  std::vector<double> inner{lo};
  for (double p : pts) inner.push_back(p);
  inner.push_back(hi);
  QuadratureResult mid = integrate(integrand, inner, quad);
  QuadratureResult left = integrate_from_minus_infinity(integrand, lo, quad, 1.0);
  QuadratureResult right = integrate_to_infinity(integrand, hi, quad, 1.0);
  const double total = left.value + mid.value + right.value;
  if (!(total > 0.0)) throw QuadratureError("fractional_kernel: integral vanished numerically");
  const double log_value = std::log(total) + log_ref;
  return {std::exp(log_value), log_value, bracket_of(mode.kind), order, d};
}

KernelBracket g_alpha(const NoiseSpec& spec, double d, const HeatKernelMode& mode,
                      const QuadratureSpec& quad) {
  return fractional_kernel(spec.alpha, spec.n, spec.K, d, mode, quad);
}

double log_fractional_kernel_lower(double order, int n, double K, double z, double constant) {
  if (!(order > 0.0)) throw DomainError("fractional_kernel_lower: order must be > 0");
  if (!(K > 0.0)) throw DomainError("fractional_kernel_lower: K must be > 0");
  if (!(constant > 0.0)) throw DomainError("fractional_kernel_lower: constant must be > 0");
  const double half_n = 0.5 * n;
  if (z < 0.0 || (z == 0.0 && order <= half_n)) {
    throw DomainError("fractional_kernel_lower: z must be > 0");
  }
  const double sk = std::sqrt(K);
  const double zt = sk * z;
  const double x = 0.25 * zt * zt;
  const double common = std::log(constant) - (n - 1) * 0.5 * zt - std::lgamma(order) - order * std::log(K);
  if (order > half_n) return common - x - 1.5 * std::log1p(zt);
  const double pref = common - 0.25 * (n - 1) * (n - 1) - 1.5 * std::log(2.0 + zt);
  if (order == half_n) {
    if (x < 30.0) return pref + std::log(neg_ei(x));
    return pref + log_gamma_upper(0.0, x);
  }
  return pref + (order - half_n) * std::log(x) + log_gamma_upper(half_n - order, x);
}

double fractional_kernel_lower(double order, int n, double K, double z, double constant) {
  return std::exp(log_fractional_kernel_lower(order, n, K, z, constant));
}

double g_alpha_lower(const NoiseSpec& spec, double z, double constant) {
  if (!(z > 0.0)) throw DomainError("g_alpha_lower: z must be > 0");
  return fractional_kernel_lower(spec.alpha, spec.n, spec.K, z, constant);
}

LowerCalibration calibrate_lower_constant(double order, double K, const QuadratureSpec& quad) {
  LowerCalibration cal;
  cal.min_ratio = std::numeric_limits<double>::infinity();
  const double sk = std::sqrt(K);
  for (int k = 0; k <= 8; ++k) {
    const double z = std::pow(10.0, -3.0 + 0.5 * k) / sk;
    const double log_exact = fractional_kernel(order, 3, K, z, HeatKernelMode::exact(), quad).log_value;
    const double ratio = std::exp(log_exact - log_fractional_kernel_lower(order, 3, K, z, 1.0));
    if (ratio < cal.min_ratio) {
      cal.min_ratio = ratio;
      cal.z_calibration = z;
    }
  }
  cal.constant = 0.99 * cal.min_ratio;
  return cal;
}

LowerCalibration calibrate_lower_constant(double order, double K, ConstantLedger& ledger,
                                          const QuadratureSpec& quad) {
  const LowerCalibration cal = calibrate_lower_constant(order, K, quad);
  std::ostringstream note;
  note << "0.99 x min G/Gbar over coarse grid, order " << order << ", K " << K << ", at z = "
       << cal.z_calibration;
  ledger.set(std::string(ledger_keys::kGbar), cal.constant, Provenance::Calibrated, note.str());
  return cal;
}

}  // namespace hyperpam
