#include "hyperpam/kernel_table.hpp"

#include <cmath>

// Boost 1.74's pchip.hpp calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <ostream>

#include "hyperpam/errors.hpp"
#include "hyperpam/kernels.hpp"

namespace hyperpam {

struct KernelTable::Interp {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

KernelTable::KernelTable(const KernelTableSpec& spec, const QuadratureSpec& quad) : spec_(spec) {
  if (!(spec.order > 0.0)) throw DomainError("KernelTable: order must be > 0");
  if (!(spec.K > 0.0)) throw DomainError("KernelTable: K must be > 0");
  if (spec.points_per_decade < 4) throw DomainError("KernelTable: need >= 4 points per decade");
  const double sk = std::sqrt(spec.K);
  bounded_ = spec.order > 0.5 * spec.n;
  floor_ = spec.delta_floor > 0.0 ? spec.delta_floor : 1e-3 / sk;
  const double d_min = bounded_ ? 1e-4 / sk : floor_;
  const double d_max = spec.d_max > 0.0 ? spec.d_max : 40.0 / sk;
  if (!(d_max > d_min)) throw DomainError("KernelTable: d_max must exceed the smallest distance");
  spec_.delta_floor = floor_;
  spec_.d_max = d_max;

  auto log_kernel = [&](double d) {
    if (spec.lower_constant > 0.0) {
      return log_fractional_kernel_lower(spec.order, spec.n, spec.K, d, spec.lower_constant);
    }
    return fractional_kernel(spec.order, spec.n, spec.K, d, spec.mode, quad).log_value;
  };
  const double decades = std::log10(d_max / d_min);
  const int count = std::max(8, static_cast<int>(std::ceil(decades * spec.points_per_decade)) + 1);
  const double h = (std::log(d_max) - std::log(d_min)) / (count - 1);
  // Two extra nodes past each end keep the one-sided endpoint slopes out of range.
  constexpr int pad = 2;
  std::vector<double> x(static_cast<std::size_t>(count + 2 * pad));
  std::vector<double> y(x.size());
  d_.resize(x.size());
  for (int i = 0; i < count + 2 * pad; ++i) {
    const auto k = static_cast<std::size_t>(i);
    x[k] = std::log(d_min) + h * (i - pad);
    d_[k] = std::exp(x[k]);
    y[k] = log_kernel(d_[k]);
  }
  log_g_ = y;
  d_lo_ = d_min;
  tail_slope_ = (y[x.size() - 1] - y[x.size() - 2]) / (d_[x.size() - 1] - d_[x.size() - 2]);
  if (bounded_) value_at_zero_ = std::exp(log_kernel(0.0));
  interp_ = std::make_shared<const Interp>(
      Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y))});
}

double KernelTable::log_value(double d) const {
  if (d >= d_.back()) return log_g_.back() + tail_slope_ * (d - d_.back());
  if (d < d_lo_) {
    if (!bounded_) return interp_->spline(std::log(d_lo_));
    // G is flat to first order near 0; interpolate linearly in d.
    const double w = d / d_lo_;
    return std::log((1.0 - w) * value_at_zero_ + w * std::exp(interp_->spline(std::log(d_lo_))));
  }
  return interp_->spline(std::log(d));
}

double KernelTable::operator()(double d) const { return std::exp(log_value(d)); }

void write_kernel_csv(std::ostream& os, const KernelTable& table, const std::vector<double>& distances) {
  const auto& s = table.spec();
  os << "d,value,mode,alpha,n,K\n";
  os.precision(17);
  for (double d : distances) {
    os << d << ',' << table(d) << ',' << to_string(table.mode()) << ',' << s.order << ',' << s.n << ','
       << s.K << '\n';
  }
}

}  // namespace hyperpam
