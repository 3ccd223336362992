#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperpam/kernels.hpp"
#include "hyperpam/ledger.hpp"
#include "hyperpam/optimize.hpp"

namespace hyperpam {

/// Constants of the moment lower bound, resolved once from the ledger.
struct LowerBoundConstants {
  double gbar = 1.0;       // constant of the closed-form kernel lower bound
  double dirichlet = 1.0;  // c in the Dirichlet eigenvalue bound

  static LowerBoundConstants from_ledger(int n, ConstantLedger& ledger);
};

/// Q(r) = beta^2 (p-1) Gbar_{2 alpha}(r) - lambda_upper(r), with lambda_upper
/// the Dirichlet eigenvalue bound of the ball of radius r.
double q_lower(double r, int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k);
double q_lower(double r, int p, double beta, const NoiseSpec& spec, ConstantLedger& ledger);

struct QSup {
  double r_star = 0.0;
  double value = 0.0;
};

/// Number of log-spaced scan points used by q_sup unless told otherwise.
inline constexpr int kQScanPoints = 241;

/// sup of Q over (0, r_max] by a log-grid scan followed by Brent refinement.
/// r_max = +inf is capped at 1e3 / sqrt(K).
QSup q_sup(int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max,
           int scan_points = kQScanPoints);
QSup q_sup(int p, double beta, const NoiseSpec& spec, ConstantLedger& ledger, double r_max,
           int scan_points = kQScanPoints);

/// p max(q_sup, -(n-1)^2 K / 4).
double lower_exponent(int p, double beta, const NoiseSpec& spec, const LowerBoundConstants& k,
                      double r_max);

/// Smallest beta with q_sup > 0 (bisection to relative 1e-10).
double beta_critical(int p, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max);
double beta_critical(int p, const NoiseSpec& spec, ConstantLedger& ledger, double r_max);

/// Smallest integer p >= 2 with q_sup > 0. Throws DomainError for beta = 0.
int p_critical(double beta, const NoiseSpec& spec, const LowerBoundConstants& k, double r_max);
int p_critical(double beta, const NoiseSpec& spec, ConstantLedger& ledger, double r_max);

enum class SlopeAxis { Beta, P };

/// Large-parameter growth of the lower exponent along one axis.
struct SlopeReport {
  SlopeAxis axis = SlopeAxis::Beta;
  char regime_case = 'C';  // 'A': alpha < n/4, 'B': alpha = n/4, 'C': alpha > n/4
  double fixed = 0.0;      // p (beta axis) or beta (p axis)
  std::vector<double> params;
  std::vector<double> exponents;
  std::vector<double> r_star;
  LinearFit fit;           // log exponent against log parameter
  double stated_slope = 0.0;
  double balance_slope = 0.0;
  /// P axis: max/min - 1 of exponent / (p(p-1)); NaN on the beta axis.
  double normalized_spread = 0.0;
  bool asserted = false;   // only case C carries a pass/fail
  bool pass = false;
};

/// Throws DomainError if the grid spans less than one decade (in p(p-1) on the p axis).
SlopeReport asymptotic_slope_check(SlopeAxis axis, const std::vector<double>& grid, double fixed,
                                   const NoiseSpec& spec, const LowerBoundConstants& k, double r_max);

/// CSV `param,exponent,r_star` preceded by `#` comment lines with the fit.
void write_slope_csv(std::ostream& os, const SlopeReport& report);

std::string to_string(SlopeAxis axis);

}  // namespace hyperpam
