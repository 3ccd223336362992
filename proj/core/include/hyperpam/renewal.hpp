#pragma once

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include "hyperpam/kernels.hpp"
#include "hyperpam/ledger.hpp"

namespace hyperpam {

/// Which of the three renewal profiles applies: alpha below, at, or above n/4.
enum class Regime { Rough = 1, Critical = 2, Smooth = 3 };

/// Throws ConfigError when alpha fails the Dalang condition.
Regime regime_of(double alpha, int n);
int regime_index(Regime regime);

/// Inputs of the moment upper-bound pipeline.
struct BoundConfig {
  NoiseSpec spec;
  /// Integrability exponent of u0 in [1, +inf]; use kInfinity for bounded-only data.
  double r = 2.0;
  double C_chaos = 1.0;      // renewal constant C
  double C_psi = 1.0;        // constant of the smoothed heat-kernel L2 bound
  double C_semigroup = 1.0;  // constant of the spectral-gap decay bound

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  /// Constants taken from (and recorded in) the ledger.
  static BoundConfig from_ledger(const NoiseSpec& spec, double r, ConstantLedger& ledger);

  /// b = (n-1)^2 K / (2 max(2, r)), 0 for r = +inf.
  [[nodiscard]] double decay_rate() const;
  [[nodiscard]] Regime regime() const { return regime_of(spec.alpha, spec.n); }
  /// Throws ConfigError for Dalang violations, r < 1 or non-positive constants.
  void validate() const;
};

/// Piecewise bound on sup_x |(-Delta)^{-alpha} P_t(x, .)|_2^2:
/// C^2 s(t) on [0, 1/2K] and C^2 (1 + K t)^{-3/2} beyond, with
/// s = t^{2 alpha - n/2}, |ln t|^2 or 1 by regime.
double psi_upper(double t, const BoundConfig& cfg);

/// int_0^{1/2K} s^{2 alpha - n/2} e^{-rho s} ds = rho^{-a} gamma(a, rho/2K), a = 2 alpha - n/2 + 1.
double renewal_i1(double rho, const BoundConfig& cfg);
/// int_0^{1/2K} e^{-rho s} ln^2 s ds (by quadrature).
double renewal_i2(double rho, const BoundConfig& cfg);
/// Full half-line majorant ((ln rho + gamma_E)^2 + pi^2/6) / rho of renewal_i2; +inf at rho = 0.
double renewal_i2_majorant(double rho);
/// (1 - e^{-rho/2K}) / rho.
double renewal_i3(double rho, const BoundConfig& cfg);
/// int_{1/2K}^inf (1 + K s)^{-3/2} e^{-rho s} ds (by quadrature).
double renewal_i4(double rho, const BoundConfig& cfg);

/// F_i(rho) = I_i(rho) + I_4(rho); throws ConfigError if `regime` does not match cfg.
double f_profile(Regime regime, double rho, const BoundConfig& cfg);

/// beta below which the growth rate vanishes: 1 / sqrt(C F_i(0)).
double theta_threshold(const BoundConfig& cfg);

/// Growth rate: 0 if C beta^2 F_i(0) <= 1, else the root of F_i(rho) = 1 / (C beta^2).
double theta(double beta, const BoundConfig& cfg);

/// (p/2) (theta(sqrt(p-1) beta) - (n-1)^2 K / max(2, r)); the last term is 0 for r = +inf.
double upper_exponent(int p, double beta, const BoundConfig& cfg);

/// Bound on |P_t u0(x)| for u0 in L^r cap L^inf:
/// sup_norm (r = +inf), C e^{-(n-1)^2 K t / 2r} sup_norm (2 <= r < inf),
/// C e^{-(n-1)^2 K t / 4} sup_norm (1 <= r <= 2).
double semigroup_decay_bound(double t, double r, double sup_norm, const BoundConfig& cfg);

struct BoundRow {
  double beta = 0.0;
  int p = 2;
  double r = 2.0;
  double theta = 0.0;
  double upper_exponent = 0.0;
  Regime regime = Regime::Smooth;
};

/// Rows for every (beta, p) pair; theta is evaluated at sqrt(p-1) beta.
std::vector<BoundRow> bound_table(const std::vector<double>& betas, const std::vector<int>& ps,
                                  const BoundConfig& cfg);

/// CSV `beta,p,r,theta,upper_exponent,regime`.
void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows);

}  // namespace hyperpam
