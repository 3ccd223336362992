#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "hyperpam/feynman_kac.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/ledger.hpp"
#include "hyperpam/renewal.hpp"

namespace hyperpam::cli {

/// Every input of a run, keyed as in the config file (model.n, noise.beta, ...).
struct RunConfig {
  int n = 3;
  double K = 1.0;
  double alpha = 1.0;
  double beta = 0.5;
  int p = 2;
  double r = std::numeric_limits<double>::infinity();
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n_paths = 2000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  InitialCondition::Kind u0_kind = InitialCondition::Kind::Constant;
  double u0_epsilon = 1.0;
  double u0_R = 1.0;
  KernelChoice kernel_mode = KernelChoice::Exact;
  double delta_floor = 0.0;
  /// User-set ledger constants, keyed without the "constants." prefix.
  std::map<std::string, double> constants;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  [[nodiscard]] NoiseSpec noise() const { return {alpha, beta, n, K}; }
  [[nodiscard]] InitialCondition initial_condition() const { return {u0_kind, u0_epsilon, u0_R}; }
  /// Ledger seeded with the user constants (provenance User).
  [[nodiscard]] ConstantLedger ledger() const;
  /// Monte Carlo settings; the lower kernel constant comes from the ledger.
  [[nodiscard]] FkConfig fk(ConstantLedger& ledger) const;
  [[nodiscard]] BoundConfig bounds(ConstantLedger& ledger) const;
  /// Search radius of the lower bound: u0.R for bump data, unbounded otherwise.
  [[nodiscard]] double q_radius() const;

  /// Throws ConfigError naming the key. A Dalang violation reports the threshold (n-2)/4.
  void validate() const;
};

/// All recognised keys, in file order.
const std::vector<std::string>& config_keys();

/// Sets one dotted key from its text form; throws ConfigError on unknown keys or bad values.
void set_value(RunConfig& cfg, std::string_view key, std::string_view text);
/// "key=value" form used by --set.
void apply_override(RunConfig& cfg, std::string_view assignment);
/// Text form of one key, exact enough to parse back to the same value.
std::string get_value(const RunConfig& cfg, std::string_view key);

/// Parses a YAML tree. A document with a top-level `config` mapping (a run
/// manifest) is read from that mapping. Errors carry source name and line.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);
/// Nested YAML; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Shortest text that reads back to the same double ("inf" for infinity).
std::string format_double(double v);
double parse_double(std::string_view text, std::string_view what);

}  // namespace hyperpam::cli
