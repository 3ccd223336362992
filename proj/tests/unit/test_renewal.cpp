#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperpam/errors.hpp"
#include "hyperpam/renewal.hpp"
#include "hyperpam/semigroup.hpp"

using namespace hyperpam;

namespace {

BoundConfig config(double alpha, double K = 1.0, double r = 2.0) {
  BoundConfig c;
  c.spec = {alpha, 1.0, 3, K};
  c.r = r;
  return c;
}

double short_oracle(double rho, double K, double power) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double s) { return std::pow(s, power) * std::exp(-rho * s); }, 0.0, 0.5 / K);
}

}  // namespace

TEST_CASE("regimes follow alpha against n/4") {
  CHECK(regime_of(0.5, 3) == Regime::Rough);
  CHECK(regime_of(0.75, 3) == Regime::Critical);
  CHECK(regime_of(1.0, 3) == Regime::Smooth);
  CHECK_THROWS_AS(regime_of(0.25, 3), ConfigError);
  CHECK(config(1.0, 1.0, 2.0).decay_rate() == doctest::Approx(1.0));
  CHECK(config(1.0, 1.0, BoundConfig::kInfinity).decay_rate() == 0.0);
  CHECK_THROWS_AS(config(1.0, 1.0, 0.5).validate(), ConfigError);
  CHECK_THROWS_AS(f_profile(Regime::Rough, 1.0, config(1.0)), ConfigError);
}

TEST_CASE("psi bound branches") {
  auto c = config(1.0);
  CHECK(psi_upper(0.2, c) == 1.0);
  CHECK(psi_upper(10.0, c) == doctest::Approx(std::pow(11.0, -1.5)));
  auto rough = config(0.5);  // 2 alpha - n/2 = -0.5
  CHECK(psi_upper(0.25, rough) == doctest::Approx(std::sqrt(4.0)));
}

TEST_CASE("renewal pieces against independent quadrature") {
  for (double K : {1.0, 3.0}) {
    for (double rho : {0.0, 0.01, 1.0, 7.0, 80.0}) {
      auto rough = config(0.6, K);  // power 2 alpha - n/2 = -0.3
      CHECK(renewal_i1(rho, rough) == doctest::Approx(short_oracle(rho, K, -0.3)).epsilon(1e-9));
      if (rho > 0.0) {
        const double a = 0.7;
        CHECK(renewal_i1(rho, rough) ==
              doctest::Approx(std::pow(rho, -a) * boost::math::tgamma_lower(a, rho / (2 * K))).epsilon(1e-10));
      }
      auto crit = config(0.75, K);
      boost::math::quadrature::tanh_sinh<double> ts;
      const double i2 = ts.integrate([&](double s) { return std::exp(-rho * s) * std::pow(std::log(s), 2); }, 0.0, 0.5 / K);
      CHECK(renewal_i2(rho, crit) == doctest::Approx(i2).epsilon(1e-9));
      auto smooth = config(1.0, K);
      if (rho > 0.0) CHECK(renewal_i3(rho, smooth) == doctest::Approx(-std::expm1(-rho / (2 * K)) / rho).epsilon(1e-13));
      boost::math::quadrature::exp_sinh<double> es;
      const double i4 = es.integrate([&](double s) { return std::pow(1.0 + K * s, -1.5) * std::exp(-rho * s); },
                                     0.5 / K, std::numeric_limits<double>::infinity());
      CHECK(renewal_i4(rho, smooth) == doctest::Approx(i4).epsilon(1e-8));
    }
  }
  CHECK(renewal_i3(1e-12, config(1.0)) == doctest::Approx(0.5));
  CHECK(renewal_i3(1.0, config(1.0)) == doctest::Approx(0.393469340287).epsilon(1e-10));
  const double g = std::numbers::egamma;
  CHECK(renewal_i2_majorant(1.0) == doctest::Approx(g * g + std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-12));
  for (double rho : {0.1, 1.0, 10.0}) CHECK(renewal_i2(rho, config(0.75)) <= renewal_i2_majorant(rho));
}

TEST_CASE("profiles decrease and theta inverts them") {
  for (double alpha : {0.5, 0.75, 1.0}) {
    auto c = config(alpha);
    const Regime reg = c.regime();
    double prev = f_profile(reg, 0.0, c);
    for (int i = 0; i <= 40; ++i) {
      const double f = f_profile(reg, std::pow(10.0, -4.0 + 0.2 * i), c);
      CHECK(f < prev);
      prev = f;
    }
    const double thr = theta_threshold(c);
    CHECK(theta(0.999 * thr, c) == 0.0);
    CHECK(theta(thr, c) == 0.0);
    CHECK(theta(1.0001 * thr, c) < 1e-3);
    double last = 0.0;
    for (double m : {1.01, 1.5, 3.0, 10.0, 100.0}) {
      const double beta = m * thr;
      const double th = theta(beta, c);
      CHECK(th >= last);
      last = th;
      CHECK(f_profile(reg, th, c) * c.C_chaos * beta * beta == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("smooth regime growth rate is quadratic") {
  auto c = config(1.0);
  const double b1 = 1e2, b2 = 1e4;
  const double slope = std::log(theta(b2, c) / theta(b1, c)) / std::log(b2 / b1);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("upper exponent: spectral gap below threshold, sign on a grid") {
  auto c = config(1.0, 1.0, 2.0);
  const double thr = theta_threshold(c);
  CHECK(upper_exponent(2, 0.5 * thr, c) == -2.0);
  auto cinf = config(1.0, 1.0, BoundConfig::kInfinity);
  CHECK(upper_exponent(2, 0.5 * thr, cinf) == 0.0);
  for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    for (int p : {2, 3, 5}) {
      const double e = upper_exponent(p, beta, c);
      CHECK((e < 0.0) == (theta(std::sqrt(p - 1.0) * beta, c) < 2.0));
    }
  }
  CHECK_THROWS_AS(upper_exponent(1, 1.0, c), ConfigError);
}

TEST_CASE("semigroup decay bound") {
  auto c = config(1.0);
  c.C_semigroup = 2.0;
  CHECK(semigroup_decay_bound(3.0, BoundConfig::kInfinity, 1.5, c) == 1.5);
  CHECK(semigroup_decay_bound(3.0, 2.0, 1.0, c) == doctest::Approx(2.0 * std::exp(-3.0)));
  CHECK(semigroup_decay_bound(3.0, 4.0, 1.0, c) == doctest::Approx(2.0 * std::exp(-1.5)));

  // Fit C on [1, 3], check the bound keeps holding on [3, 6].
  const auto o = ModelPoint::basepoint(3, 1.0);
  const auto ball = RadialProfile::ball_indicator(1.0);
  double fitted = 0.0;
  for (double t = 1.0; t <= 3.0; t += 0.25) {
    fitted = std::max(fitted, heat_semigroup_apply(t, ball, o, SemigroupMethod::Quadrature).value * std::exp(t));
  }
  c.C_semigroup = fitted;
  for (double t = 3.0; t <= 6.0; t += 0.25) {
    CHECK(heat_semigroup_apply(t, ball, o, SemigroupMethod::Quadrature).value <= semigroup_decay_bound(t, 2.0, 1.0, c));
  }
}

TEST_CASE("bound table output") {
  auto c = config(1.0, 1.0, BoundConfig::kInfinity);
  const auto rows = bound_table({0.1, 10.0}, {2, 3}, c);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].theta == doctest::Approx(theta(std::sqrt(2.0) * 10.0, c)));
  std::ostringstream os;
  write_bounds_csv(os, rows);
  CHECK(os.str().rfind("beta,p,r,theta,upper_exponent,regime\n", 0) == 0);
  CHECK(os.str().find(",inf,") != std::string::npos);
}
