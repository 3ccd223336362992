#include "hyperpam/cli/validate.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hyperpam/brownian.hpp"
#include "hyperpam/dirichlet.hpp"
#include "hyperpam/feynman_kac.hpp"
#include "hyperpam/geometry.hpp"
#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/lower_bound.hpp"
#include "hyperpam/quadrature.hpp"
#include "hyperpam/renewal.hpp"
#include "hyperpam/specialfn.hpp"

namespace hyperpam::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

CheckResult gamma_additivity() {
  double worst = 0.0;
  for (double s : {0.5, 1.0, 1.5, 2.5, 4.0}) {
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      const double full = std::tgamma(s);
      worst = std::max(worst, std::abs(gamma_lower(s, x) + gamma_upper(s, x) - full) / full);
    }
  }
  return {"special: gamma_lower + gamma_upper = Gamma", worst <= 1e-10, "max rel err " + fmt(worst)};
}

CheckResult gamma_recurrence() {
  double worst = 0.0;
  for (double s : {0.5, 1.0, 1.5, 2.5}) {
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      const double lhs = gamma_upper(s + 1.0, x);
      const double rhs = s * gamma_upper(s, x) + std::pow(x, s) * std::exp(-x);
      worst = std::max(worst, std::abs(lhs - rhs) / lhs);
    }
  }
  return {"special: upper gamma recurrence", worst <= 1e-9, "max rel err " + fmt(worst)};
}

CheckResult neg_ei_small_x() {
  const double x = 1e-4;
  const double ratio = neg_ei(x) / (-std::numbers::egamma - std::log(x));
  return {"special: -Ei(-x) ~ -ln x at small x", std::abs(ratio - 1.0) <= 0.05, "ratio " + fmt(ratio)};
}

CheckResult norm_drift(const RunConfig& cfg) {
  GeodesicWalker walker(cfg.n, cfg.K);
  Rng rng(cfg.seed);
  ModelPoint x = ModelPoint::basepoint(cfg.n, cfg.K);
  double worst = 0.0;
  for (int k = 0; k < 2000; ++k) {
    walker.step(x.mutable_coords(), 0.01, rng);
    worst = std::max(worst, x.norm_defect());
  }
  return {"geometry: norm defect per step", worst <= 1e-9, "max defect " + fmt(worst)};
}

CheckResult triangle(const RunConfig& cfg) {
  Rng rng(cfg.seed + 1);
  std::normal_distribution<double> nd;
  auto random_point = [&] {
    std::vector<double> c(static_cast<std::size_t>(cfg.n) + 1);
    double s = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
      c[i] = 2.0 * nd(rng);
      s += c[i] * c[i];
    }
    c[0] = std::sqrt(1.0 / cfg.K + s);
    return ModelPoint(c, cfg.K);
  };
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_point();
    const auto b = random_point();
    const auto c = random_point();
    if (distance(a, c) > distance(a, b) + distance(b, c) + 1e-10) ++violations;
  }
  return {"geometry: triangle inequality", violations == 0, std::to_string(violations) + " violations in 1000"};
}

CheckResult heat_mass(const RunConfig& cfg) {
  const double K = cfg.K;
  const double sk = std::sqrt(K);
  double worst = 0.0;
  for (double t : {0.1, 1.0, 5.0}) {
    // log of sinh^2 kept separate so the far tail is 0, not inf * 0.
    auto f = [&](double r) {
      if (r == 0.0) return 0.0;
      const double x = sk * r;
      const double log_sinh = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * sk);
      return 4.0 * std::numbers::pi * std::exp(2.0 * log_sinh + log_heat_kernel(t, r, 3, K, HeatKernelMode::exact()));
    };
    const double scale = std::sqrt(t);
    const double mass = integrate_to_infinity(f, 0.0, {}, scale).value;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return {"heat kernel: mass = 1 (n = 3)", worst <= 1e-6, "max |mass - 1| " + fmt(worst)};
}

CheckResult kernel_slope(const RunConfig& cfg) {
  const double sk = std::sqrt(cfg.K);
  double worst = 0.0;
  for (double a : {0.5, 0.6}) {
    const double d1 = 1e-5 / sk;
    const double d2 = 1e-4 / sk;
    const auto g1 = fractional_kernel(a, 3, cfg.K, d1, HeatKernelMode::exact());
    const auto g2 = fractional_kernel(a, 3, cfg.K, d2, HeatKernelMode::exact());
    const double slope = (g2.log_value - g1.log_value) / std::log(d2 / d1);
    worst = std::max(worst, std::abs(slope - (2.0 * a - 3.0)));
  }
  return {"kernels: small-d log-log slope = 2 alpha - n", worst <= 0.1, "max |slope error| " + fmt(worst)};
}

CheckResult kernel_lower_and_monotone(const RunConfig& cfg) {
  const double alpha = std::max(cfg.alpha, 0.3);
  const auto cal = calibrate_lower_constant(alpha, cfg.K);
  const double sk = std::sqrt(cfg.K);
  double worst_ratio = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40; ++i) {
    const double z = std::pow(10.0, -3.0 + 0.1 * i) / sk;
    const double g = fractional_kernel(alpha, 3, cfg.K, z, HeatKernelMode::exact()).log_value;
    const double gl = log_fractional_kernel_lower(alpha, 3, cfg.K, z, cal.constant);
    worst_ratio = std::min(worst_ratio, std::exp(g - gl));
    monotone = monotone && g < prev;
    prev = g;
  }
  return {"kernels: calibrated lower kernel <= exact, exact decreasing", worst_ratio >= 1.0 && monotone,
          "min G/Gbar " + fmt(worst_ratio) + (monotone ? "" : ", not monotone")};
}

CheckResult renewal_checks(const RunConfig& cfg) {
  ConstantLedger ledger = cfg.ledger();
  BoundConfig bc = BoundConfig::from_ledger(cfg.noise(), 2.0, ledger);
  const Regime reg = bc.regime();
  bool decreasing = true;
  double prev = f_profile(reg, 0.0, bc);
  for (int i = 0; i <= 30; ++i) {
    const double rho = std::pow(10.0, -3.0 + 0.2 * i);
    const double f = f_profile(reg, rho, bc);
    decreasing = decreasing && f < prev;
    prev = f;
  }
  const double thr = theta_threshold(bc);
  const bool threshold_ok = theta(0.999 * thr, bc) == 0.0 && theta(1.001 * thr, bc) > 0.0 && theta(1.001 * thr, bc) < 1e-1;
  double worst_rt = 0.0;
  for (double m : {2.0, 5.0, 20.0}) {
    const double beta = m * thr;
    const double th = theta(beta, bc);
    worst_rt = std::max(worst_rt, std::abs(f_profile(reg, th, bc) * bc.C_chaos * beta * beta - 1.0));
  }
  const double gap = -(cfg.n - 1) * (cfg.n - 1) * cfg.K / 2.0;
  const double up = upper_exponent(2, 0.5 * thr, bc);
  const bool pass = decreasing && threshold_ok && worst_rt <= 1e-6 && up == gap;
  std::string detail = "round trip " + fmt(worst_rt) + ", exponent below threshold " + fmt(up);
  if (!decreasing) detail += ", F not decreasing";
  if (!threshold_ok) detail += ", threshold not sharp";
  return {"bounds: F decreasing, threshold, round trip, spectral gap", pass, detail};
}

CheckResult dirichlet_monotone(const RunConfig& cfg) {
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40; ++i) {
    const double R = std::pow(10.0, -2.0 + 0.1 * i) / std::sqrt(cfg.K);
    const double v = dirichlet_eigenvalue_upper(R, cfg.n, cfg.K, flat_ball_eigenvalue(cfg.n));
    ok = ok && v < prev;
    prev = v;
  }
  return {"lower bound: Dirichlet bound decreasing in R", ok, ok ? "" : "not monotone"};
}

CheckResult fk_beta_zero(const RunConfig& cfg) {
  FkConfig fk;
  fk.spec = {cfg.alpha, 0.0, cfg.n, cfg.K};
  fk.kernel_mode = cfg.n == 3 ? KernelChoice::Exact : KernelChoice::Lower;
  fk.t_end = 0.5;
  fk.dt = 0.01;
  fk.n_paths = 200;
  fk.seed = cfg.seed;
  const auto est = moment_estimate(fk);
  return {"fkmc: beta = 0 gives mean 1, stderr 0", est.mean == 1.0 && est.std_error == 0.0,
          "mean " + fmt(est.mean) + ", stderr " + fmt(est.std_error)};
}

CheckResult fk_workers(const RunConfig& cfg) {
  FkConfig fk;
  fk.spec = {std::max(cfg.alpha, 0.3), 0.5, 3, cfg.K};
  fk.t_end = 0.2;
  fk.dt = 0.01;
  fk.n_paths = 700;
  fk.seed = cfg.seed;
  fk.workers = 1;
  const auto a = moment_estimate(fk);
  fk.workers = 4;
  const auto b = moment_estimate(fk);
  const auto c = moment_estimate(fk);
  const bool floor_ok = a.mean >= 1.0 - 3.0 * a.std_error;
  return {"fkmc: worker invariance, determinism, trivial floor", a.same_numbers(b) && b.same_numbers(c) && floor_ok,
          "mean " + fmt(a.mean) + " +- " + fmt(a.std_error)};
}

CheckResult q_sup_stability(const RunConfig& cfg) {
  NoiseSpec spec{std::max(cfg.alpha, 0.3), 0.0, 3, cfg.K};
  const LowerBoundConstants k{1.0, flat_ball_eigenvalue(3)};
  double worst = 0.0;
  for (double beta : {1.0, 10.0, 100.0}) {
    const auto a = q_sup(2, beta, spec, k, std::numeric_limits<double>::infinity());
    const auto b = q_sup(2, beta, spec, k, std::numeric_limits<double>::infinity(), 4 * kQScanPoints);
    worst = std::max(worst, std::abs(a.value - b.value) / std::max(1.0, std::abs(b.value)));
  }
  return {"lower bound: q_sup refinement stability", worst <= 1e-6, "max rel change " + fmt(worst)};
}

CheckResult beta_critical_monotone(const RunConfig& cfg) {
  NoiseSpec spec{std::max(cfg.alpha, 0.3), 0.0, 3, cfg.K};
  const LowerBoundConstants k{1.0, flat_ball_eigenvalue(3)};
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int p = 2; p <= 8; ++p) {
    const double b = beta_critical(p, spec, k, std::numeric_limits<double>::infinity());
    ok = ok && b <= prev;
    prev = b;
  }
  return {"lower bound: beta_critical nonincreasing in p", ok, "beta_c(8) = " + fmt(prev)};
}

CheckResult config_round_trip(const RunConfig& cfg) {
  const bool ok = parse_config(serialize_config(cfg)) == cfg;
  return {"cli: config round trip", ok, ""};
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg, std::ostream* progress) {
  const std::vector<std::function<CheckResult()>> checks = {
      gamma_additivity,
      gamma_recurrence,
      neg_ei_small_x,
      [&] { return norm_drift(cfg); },
      [&] { return triangle(cfg); },
      [&] { return heat_mass(cfg); },
      [&] { return kernel_slope(cfg); },
      [&] { return kernel_lower_and_monotone(cfg); },
      [&] { return renewal_checks(cfg); },
      [&] { return dirichlet_monotone(cfg); },
      [&] { return fk_beta_zero(cfg); },
      [&] { return fk_workers(cfg); },
      [&] { return q_sup_stability(cfg); },
      [&] { return beta_critical_monotone(cfg); },
      [&] { return config_round_trip(cfg); },
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
    if (progress) *progress << "." << std::flush;
  }
  if (progress) *progress << "\n";
  return out;
}

}  // namespace hyperpam::cli
