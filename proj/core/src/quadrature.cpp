#include "hyperpam/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hyperpam/errors.hpp"

namespace hyperpam {

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw ConfigError("QuadratureSpec: tolerances must be strictly positive");
  }
  if (max_subdivisions < 1) {
    throw ConfigError("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452531, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  double err = std::abs(kronrod - gauss);
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  if (!std::isfinite(kronrod)) {
    std::ostringstream msg;
    msg << "quadrature: non-finite integrand on [" << a << ", " << b << "]";
    throw QuadratureError(msg.str());
  }
  const bool splittable = a < center && center < b &&
                          std::abs(b - a) > 64.0 * std::numeric_limits<double>::epsilon() *
                                                std::max(std::abs(a), std::abs(b));
  return {a, b, kronrod, err, splittable};
}

QuadratureResult adapt(const Integrand& f, std::vector<Segment> seeds, const QuadratureSpec& spec) {
  spec.validate();
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  std::vector<Segment> frozen;
  double total = 0.0;
  double total_err = 0.0;
  for (auto& s : seeds) {
    total += s.value;
    total_err += s.error;
    if (s.splittable) heap.push(s); else frozen.push_back(s);
  }
  int subdivisions = 0;
  auto tolerance = [&] {
    return std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(total));
  };
  while (total_err > tolerance() && !heap.empty()) {
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature: tolerance " << tolerance() << " not met after " << subdivisions
          << " subdivisions (error estimate " << total_err << ")";
      throw QuadratureError(msg.str());
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    for (auto* s : {&left, &right}) {
      if (s->splittable) heap.push(*s); else frozen.push_back(*s);
    }
    ++subdivisions;
  }
  // Re-sum from scratch so the running updates do not accumulate drift.
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  auto add = [&](const Segment& s) {
    const double y = s.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += s.error;
  };
  for (const auto& s : frozen) add(s);
  while (!heap.empty()) {
    add(heap.top());
    heap.pop();
  }
  if (err > std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(sum))) {
    std::ostringstream msg;
    msg << "quadrature: roundoff-limited, error estimate " << err << " for value " << sum;
    throw QuadratureError(msg.str());
  }
  return {sum, err, subdivisions};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  return adapt(f, {gauss_kronrod(f, a, b)}, spec);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return {};
  std::vector<Segment> seeds;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    seeds.push_back(gauss_kronrod(f, pts[i], pts[i + 1]));
  }
  return adapt(f, std::move(seeds), spec);
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec,
                                       double scale) {
  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    const double x = a + scale * u / w;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx * scale / (w * w);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

QuadratureResult integrate_from_minus_infinity(const Integrand& f, double b,
                                               const QuadratureSpec& spec, double scale) {
  auto mapped = [&](double u) {
    const double w = 1.0 - u;
    const double x = b - scale * u / w;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx * scale / (w * w);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace hyperpam
