#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hyperpam {

enum class Provenance { Default, Calibrated, User };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// Registry of every constant the bounds leave unpinned.
///
/// Consumers ask for a key with a fallback; the fallback is recorded as a
/// Default entry the first time it is used so that manifests show exactly
/// which values drove a run.
class ConstantLedger {
 public:
  struct Entry {
    double value = 1.0;
    Provenance provenance = Provenance::Default;
    std::string note;
  };

  void set(std::string key, double value, Provenance provenance, std::string note = {});
  [[nodiscard]] std::optional<Entry> find(std::string_view key) const;
  [[nodiscard]] double value_or(std::string_view key, double fallback) const;
  /// Like value_or, but records the fallback as a Default entry.
  double resolve(std::string_view key, double fallback, std::string_view note = {});
  [[nodiscard]] const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

namespace ledger_keys {
inline constexpr std::string_view kDmUpper = "dm.C_upper";          // C in P <= C h
inline constexpr std::string_view kDmLower = "dm.c_lower";          // c in P >= c h
inline constexpr std::string_view kGbar = "gbar.C";                 // constant of the closed-form kernel lower bound
inline constexpr std::string_view kChaos = "chaos.C";               // C in the geometric-series threshold
inline constexpr std::string_view kPsi = "psi.C";                   // C in the L2 bound of the smoothed heat kernel
inline constexpr std::string_view kSemigroup = "semigroup.C";       // C in the spectral-gap decay bound
inline constexpr std::string_view kDirichlet = "dirichlet.c";       // c_n in lambda(R) <= c/R^2 + C
}  // namespace ledger_keys

}  // namespace hyperpam
