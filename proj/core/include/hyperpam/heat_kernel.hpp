#pragma once

#include <string_view>

#include "hyperpam/ledger.hpp"

namespace hyperpam {

enum class HeatKernelKind { ExactN3, DmUpper, DmLower };

std::string_view to_string(HeatKernelKind kind);

/// Which heat kernel to use, together with the constants of the two-sided
/// Comparison bracket  c h <= P <= C h.
struct HeatKernelMode {
  HeatKernelKind kind = HeatKernelKind::ExactN3;
  double C_upper = 1.0;
  double c_lower = 1.0;

  static HeatKernelMode exact() { return {}; }
  static HeatKernelMode upper(double C = 1.0) { return {HeatKernelKind::DmUpper, C, 1.0}; }
  static HeatKernelMode lower(double c = 1.0) { return {HeatKernelKind::DmLower, 1.0, c}; }
  /// Bracket constants pulled from the ledger (defaults 1).
  static HeatKernelMode from_ledger(HeatKernelKind kind, const ConstantLedger& ledger);
};

enum class BracketMode { Exact, Lower, Upper };

std::string_view to_string(BracketMode mode);

/// A kernel value tagged with how it was obtained, so downstream bias
/// accounting never has to guess.
struct KernelBracket {
  double value = 0.0;
  double log_value = 0.0;
  BracketMode mode = BracketMode::Exact;
  double alpha = 0.0;  // kernel order; 0 for the heat kernel itself
  double d = 0.0;
};

BracketMode bracket_of(HeatKernelKind kind);

/// log P^1_t(r) = -3/2 log(4 pi t) + log(r / sinh r) - t - r^2 / 4t  (n = 3, K = 1).
double log_heat_kernel_n3_unit(double t, double r);

/// log of the heat kernel (or bracket) on H^n_K at time t and distance d.
/// Uses P^K_t(d) = K^(n/2) P^1_(Kt)(sqrt(K) d). Throws ModeError for ExactN3 with n != 3.
double log_heat_kernel(double t, double d, int n, double K, const HeatKernelMode& mode);

KernelBracket heat_kernel(double t, double d, int n, double K, const HeatKernelMode& mode);

}  // namespace hyperpam
