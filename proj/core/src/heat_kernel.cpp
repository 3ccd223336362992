#include "hyperpam/heat_kernel.hpp"

#include <cmath>
#include <numbers>

#include "hyperpam/errors.hpp"
#include "hyperpam/specialfn.hpp"

namespace hyperpam {

std::string_view to_string(HeatKernelKind kind) {
  switch (kind) {
    case HeatKernelKind::ExactN3: return "EXACT_N3";
    case HeatKernelKind::DmUpper: return "DM_UPPER";
    case HeatKernelKind::DmLower: return "DM_LOWER";
  }
  return "EXACT_N3";
}

std::string_view to_string(BracketMode mode) {
  switch (mode) {
    case BracketMode::Exact: return "EXACT";
    case BracketMode::Lower: return "LOWER";
    case BracketMode::Upper: return "UPPER";
  }
  return "EXACT";
}

HeatKernelMode HeatKernelMode::from_ledger(HeatKernelKind kind, const ConstantLedger& ledger) {
  return {kind, ledger.value_or(ledger_keys::kDmUpper, 1.0),
          ledger.value_or(ledger_keys::kDmLower, 1.0)};
}

BracketMode bracket_of(HeatKernelKind kind) {
  switch (kind) {
    case HeatKernelKind::ExactN3: return BracketMode::Exact;
    case HeatKernelKind::DmUpper: return BracketMode::Upper;
    case HeatKernelKind::DmLower: return BracketMode::Lower;
  }
  return BracketMode::Exact;
}

double log_heat_kernel_n3_unit(double t, double r) {
  return -1.5 * std::log(4.0 * std::numbers::pi * t) + log_r_over_sinh(r) - t - r * r / (4.0 * t);
}

double log_heat_kernel(double t, double d, int n, double K, const HeatKernelMode& mode) {
  if (!(t > 0.0)) throw DomainError("heat_kernel: t must be > 0");
  if (!(d >= 0.0)) throw DomainError("heat_kernel: d must be >= 0");
  if (!(K > 0.0)) throw DomainError("heat_kernel: K must be > 0");
  const double scaled_t = K * t;
  const double scaled_d = std::sqrt(K) * d;
  const double log_volume_factor = 0.5 * n * std::log(K);
  switch (mode.kind) {
    case HeatKernelKind::ExactN3:
      if (n != 3) throw ModeError("heat_kernel: EXACT_N3 requires n = 3");
      return log_volume_factor + log_heat_kernel_n3_unit(scaled_t, scaled_d);
    case HeatKernelKind::DmUpper:
      return std::log(mode.C_upper) + log_volume_factor + log_dm_h(scaled_t, scaled_d, n);
    case HeatKernelKind::DmLower:
      return std::log(mode.c_lower) + log_volume_factor + log_dm_h(scaled_t, scaled_d, n);
  }
  throw ModeError("heat_kernel: unknown mode");
}

KernelBracket heat_kernel(double t, double d, int n, double K, const HeatKernelMode& mode) {
  const double lv = log_heat_kernel(t, d, n, K, mode);
  return {std::exp(lv), lv, bracket_of(mode.kind), 0.0, d};
}

}  // namespace hyperpam
