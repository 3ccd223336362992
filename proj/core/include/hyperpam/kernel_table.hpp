#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/quadrature.hpp"

namespace hyperpam {

struct KernelTableSpec {
  double order = 2.0;
  int n = 3;
  double K = 1.0;
  HeatKernelMode mode = HeatKernelMode::exact();
  /// Cap distance for kernels unbounded at 0; <= 0 means 1e-3 / sqrt(K).
  double delta_floor = 0.0;
  int points_per_decade = 64;
  /// Largest tabulated distance; <= 0 means 40 / sqrt(K). Beyond it log G is extrapolated linearly in d.
  double d_max = 0.0;
  /// > 0: tabulate the closed-form lower bound with this constant instead of
  /// integrating the heat kernel (mode is then ignored).
  double lower_constant = 0.0;
};

/// Immutable tabulation of the fractional kernel G_order(d) for use inside
/// Monte Carlo loops.
///
/// Interpolation is monotone cubic Hermite in (ln d, ln G). When the kernel
/// is finite at 0 the table holds G(0) and no capping happens; otherwise
/// distances below the floor return G(floor). Safe to share across threads.
class KernelTable {
 public:
  explicit KernelTable(const KernelTableSpec& spec, const QuadratureSpec& quad = {});

  [[nodiscard]] double operator()(double d) const;
  [[nodiscard]] double log_value(double d) const;

  /// True when G(0) is finite (order > n/2).
  [[nodiscard]] bool bounded_at_zero() const { return bounded_; }
  /// Distance below which values are capped; 0 when bounded_at_zero().
  [[nodiscard]] double floor_distance() const { return bounded_ ? 0.0 : floor_; }
  [[nodiscard]] bool caps(double d) const { return !bounded_ && d < floor_; }
  [[nodiscard]] const KernelTableSpec& spec() const { return spec_; }
  [[nodiscard]] BracketMode mode() const {
    return spec_.lower_constant > 0.0 ? BracketMode::Lower : bracket_of(spec_.mode.kind);
  }
  [[nodiscard]] const std::vector<double>& distances() const { return d_; }
  [[nodiscard]] const std::vector<double>& log_values() const { return log_g_; }

 private:
  struct Interp;
  KernelTableSpec spec_;
  bool bounded_ = false;
  double floor_ = 0.0;
  double value_at_zero_ = 0.0;
  double tail_slope_ = 0.0;
  double d_lo_ = 0.0;
  std::vector<double> d_;
  std::vector<double> log_g_;
  std::shared_ptr<const Interp> interp_;
};

/// CSV `d,value,mode,alpha,n,K` for the given distances.
void write_kernel_csv(std::ostream& os, const KernelTable& table, const std::vector<double>& distances);

}  // namespace hyperpam
