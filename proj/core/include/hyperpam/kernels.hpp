#pragma once

#include <vector>

#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/ledger.hpp"
#include "hyperpam/quadrature.hpp"

namespace hyperpam {

/// Noise regularity alpha, coupling beta, dimension n and curvature magnitude K.
struct NoiseSpec {
  double alpha = 1.0;
  double beta = 1.0;
  int n = 3;
  double K = 1.0;

  /// alpha > (n - 2) / 4.
  [[nodiscard]] bool dalang_ok() const;
  /// Throws ConfigError on alpha <= 0, beta < 0, K <= 0 or n < 2 (Dalang is not checked here).
  void validate() const;
};

/// True iff alpha > (n - 2) / 4 (strict).
bool dalang_check(double alpha, int n);

/// G_order(d) = (1 / Gamma(order)) int_0^inf t^(order-1) P_t(d) dt, with P_t
/// taken from heat_kernel() in the given mode.
///
/// Integrated in log t with breakpoints at t = d^2/4 and t = 1/K. Throws
/// DivergenceError for d = 0 with order <= n/2 and QuadratureError when the
/// tolerance cannot be met.
KernelBracket fractional_kernel(double order, int n, double K, double d, const HeatKernelMode& mode,
                                const QuadratureSpec& quad = {});

/// fractional_kernel() with order = spec.alpha.
KernelBracket g_alpha(const NoiseSpec& spec, double d, const HeatKernelMode& mode,
                      const QuadratureSpec& quad = {});

/// Closed-form lower bound of G_order at distance z:
///   order < n/2 :  C e^{-(n-1)^2/4 - (n-1) sqrt(K) z/2} / (Gamma(order) K^order (2 + sqrt(K) z)^{3/2})
///                  * (K z^2/4)^{order - n/2} * Gamma(n/2 - order, K z^2/4)
///   order = n/2 :  same prefactor times -Ei(-K z^2/4)
///   order > n/2 :  C e^{-K z^2/4 - (n-1) sqrt(K) z/2} / (Gamma(order) K^order (1 + sqrt(K) z)^{3/2})
/// z = 0 is accepted only in the bounded case order > n/2.
double log_fractional_kernel_lower(double order, int n, double K, double z, double constant);
double fractional_kernel_lower(double order, int n, double K, double z, double constant);

/// fractional_kernel_lower() with order = spec.alpha; throws DomainError for z <= 0.
double g_alpha_lower(const NoiseSpec& spec, double z, double constant);

/// Result of fitting the lower-bound constant against the exact n = 3 kernel.
struct LowerCalibration {
  double constant = 1.0;       // value to store under ledger key gbar.C
  double z_calibration = 0.0;  // grid point that fixed the constant
  double min_ratio = 0.0;      // G / Gbar(C = 1) at that point
};

/// One-point calibration: scan the coarse grid z_k = 10^{-3 + k/2} / sqrt(K),
/// k = 0..8, pick the point with the smallest G / Gbar(C=1), and set
/// C = 0.99 * that ratio. The 1% margin covers the fine grid in between.
LowerCalibration calibrate_lower_constant(double order, double K, const QuadratureSpec& quad = {});

/// Calibrates and records the constant under ledger_keys::kGbar.
LowerCalibration calibrate_lower_constant(double order, double K, ConstantLedger& ledger,
                                          const QuadratureSpec& quad = {});

}  // namespace hyperpam
