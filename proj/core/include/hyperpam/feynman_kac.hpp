#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "hyperpam/kernel_table.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/ledger.hpp"
#include "hyperpam/profile.hpp"

namespace hyperpam {

/// Initial data: eps everywhere, or eps on B(x, R) and 0 outside.
struct InitialCondition {
  enum class Kind { Constant, Bump };
  Kind kind = Kind::Constant;
  double epsilon = 1.0;
  double R = 1.0;

  static InitialCondition constant(double eps = 1.0) { return {Kind::Constant, eps, 1.0}; }
  static InitialCondition bump(double eps, double R) { return {Kind::Bump, eps, R}; }
  [[nodiscard]] RadialProfile profile() const;
};

std::string_view to_string(InitialCondition::Kind kind);
InitialCondition::Kind initial_kind_from_string(std::string_view s);

/// Which correlation kernel drives the exponent.
enum class KernelChoice { Exact, Lower };

std::string_view to_string(KernelChoice choice);
KernelChoice kernel_choice_from_string(std::string_view s);

struct FkConfig {
  NoiseSpec spec;
  int p = 2;
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t n_paths = 10000;
  std::uint64_t seed = 1;
  InitialCondition u0;
  KernelChoice kernel_mode = KernelChoice::Exact;
  /// Cap distance for kernels unbounded at 0; <= 0 means 1e-3 / sqrt(K).
  double delta_floor = 0.0;
  /// Constant of the closed-form lower kernel (used when kernel_mode = Lower).
  double lower_constant = 1.0;
  unsigned workers = 1;

  /// Throws ConfigError for p < 2, Dalang violations, eps <= 0, bad times or sizes.
  void validate() const;
  [[nodiscard]] KernelTableSpec kernel_spec() const;
};

enum class Bias { Unbiased, Lower };

std::string_view to_string(Bias bias);

struct MomentEstimate {
  double mean = 0.0;        // exp(log_mean); +inf only if the double range is exceeded
  double std_error = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  Bias bias = Bias::Unbiased;
  double log_mean = 0.0;
  double log_std_error = 0.0;  // log of std_error
  double wall_seconds = 0.0;

  /// Everything except the wall time.
  [[nodiscard]] bool same_numbers(const MomentEstimate& other) const;
};

/// E[u(t, x)^p] by the Feynman-Kac formula with p independent Brownian
/// motions from the basepoint: average of prod_j u0(B^j_t) exp(beta^2 S),
/// S = sum_{i != k} int_0^t G_{2 alpha}(d(B^i_s, B^k_s)) ds by the trapezoid rule.
///
/// Replicate i draws from stream_seed(seed, i) and replicates are merged in
/// index order, so results do not depend on the worker count.
MomentEstimate moment_estimate(const FkConfig& cfg);
/// Same, reusing a prebuilt kernel table of order 2 alpha.
MomentEstimate moment_estimate(const FkConfig& cfg, const KernelTable& table);

/// Coefficient of beta^2 in E[u(t)^2] - 1 for u0 = 1: E[2 int_0^t G_{2 alpha}(d(B^1_s, B^2_s)) ds].
MomentEstimate chaos_k1_estimate(const NoiseSpec& spec, double t, double dt, std::size_t n_paths,
                                 std::uint64_t seed, unsigned workers = 1);

struct DtConvergence {
  MomentEstimate coarse;
  MomentEstimate fine;  // dt / 2
  bool converged = false;  // |difference| < combined standard error
};

DtConvergence check_dt_convergence(const FkConfig& cfg);

struct IntermittencyPoint {
  double t = 0.0;
  double ratio = 0.0;          // E[u^p]^{1/p} / E[u^q]^{1/q}
  double log_ratio = 0.0;
  double log_ratio_stderr = 0.0;
  double stderr = 0.0;         // of the ratio, delta method
};

struct IntermittencySeries {
  int p = 0;
  int q = 0;
  std::vector<IntermittencyPoint> points;
  /// Standard error of log_ratio[k+1] - log_ratio[k] (common random numbers).
  std::vector<double> increment_stderr;
  MomentEstimate final_p;  // moment p at the last grid time
  MomentEstimate final_q;
};

/// Moment ratios on an increasing time grid from one path ensemble of p
/// paths; the q-th moment uses the first q paths of every replicate.
/// Requires 2 <= q <= p; cfg.p and cfg.t_end are ignored.
IntermittencySeries intermittency_ratio(int p, int q, const std::vector<double>& t_grid, const FkConfig& cfg);

}  // namespace hyperpam
