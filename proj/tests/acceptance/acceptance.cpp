// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperpam/brownian.hpp"
#include "hyperpam/cli/commands.hpp"
#include "hyperpam/cli/manifest.hpp"
#include "hyperpam/dirichlet.hpp"
#include "hyperpam/feynman_kac.hpp"
#include "hyperpam/geometry.hpp"
#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/lower_bound.hpp"
#include "hyperpam/quadrature.hpp"
#include "hyperpam/renewal.hpp"
#include "hyperpam/rng.hpp"
#include "hyperpam/semigroup.hpp"
#include "hyperpam/specialfn.hpp"
#include "hyperpam/stats.hpp"

using namespace hyperpam;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects sub-check failures for one criterion.
struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  template <class T>
  Verdict& note(const std::string& key, T value) {
    detail << ' ' << key << '=' << value;
    return *this;
  }
};

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return v;
}

std::vector<double> lin_space(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

// ---- 1 -------------------------------------------------------------------

void special_functions(Verdict& v) {
  double worst_add = 0.0, worst_rec = 0.0;
  for (double s : {0.5, 1.0, 1.5, 2.5}) {
    const double full = std::tgamma(s);
    for (double x : log_space(1e-4, 20.0, 61)) {
      worst_add = std::max(worst_add, std::abs(gamma_lower(s, x) + gamma_upper(s, x) - full) / full);
      const double lhs = gamma_upper(s + 1.0, x);
      const double rhs = s * gamma_upper(s, x) + std::pow(x, s) * std::exp(-x);
      worst_rec = std::max(worst_rec, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  // -Ei(-x) ~ -log x - euler_gamma as x -> 0.
  const double x = 1e-6;
  const double ratio = neg_ei(x) / (-std::log(x) - std::numbers::egamma);
  v.note("additivity", worst_add).note("recurrence", worst_rec).note("neg_ei_ratio", ratio);
  v.require(worst_add <= 1e-10, "additivity");
  v.require(worst_rec <= 1e-9, "recurrence");
  v.require(std::abs(ratio - 1.0) <= 0.05, "neg_ei asymptotic");
}

// ---- 2 -------------------------------------------------------------------

ModelPoint random_point(int n, double K, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 2.0);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  double s = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    c[i] = nd(rng);
    s += c[i] * c[i];
  }
  c[0] = std::sqrt(1.0 / K + s);
  return ModelPoint(c, K);
}

// Mean radius of dr = (n-1) sqrt(K) coth(sqrt(K) r) dt + sqrt(2) dW, reflected at 0.
double radial_euler_mean(int n, double K, double t_end, double dt, int paths, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const double sk = std::sqrt(K);
  const auto steps = static_cast<int>(std::lround(t_end / dt));
  double sum = 0.0;
  for (int p = 0; p < paths; ++p) {
    double r = std::sqrt(2.0 * dt * n);
    for (int k = 1; k < steps; ++k) {
      r += (n - 1) * sk / std::tanh(sk * r) * dt + std::sqrt(2.0 * dt) * nd(rng);
      r = std::abs(r);
    }
    sum += r;
  }
  return sum / paths;
}

void geometry_paths(Verdict& v) {
  const int n = 3;
  const double K = 1.0;
  const auto o = ModelPoint::basepoint(n, K);

  GeodesicWalker walker(n, K);
  double drift = 0.0;
  {
    Rng rng(stream_seed(5, 0));
    auto x = o;
    for (int k = 0; k < 50000; ++k) {
      walker.step(x.mutable_coords(), 1e-3, rng);
      drift = std::max(drift, x.norm_defect());
    }
  }
  v.note("max_norm_drift", drift);
  v.require(drift <= 1e-9, "norm drift");

  std::mt19937_64 rng(11);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_point(n, K, rng), b = random_point(n, K, rng), c = random_point(n, K, rng);
    if (distance(a, c) > distance(a, b) + distance(b, c) + 1e-9) ++violations;
  }
  v.note("triangle_violations", violations);
  v.require(violations == 0, "triangle inequality");

  const double dt = 1e-3;
  RunningStats d2;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    Rng r(stream_seed(7, i));
    auto x = o;
    walker.reset();
    walker.step(x.mutable_coords(), dt, r);
    const double d = distance(o, x);
    d2.push(d * d);
  }
  const double z = (d2.mean() - 2.0 * n * dt) / d2.stderr_of_mean();
  v.note("one_step_z", z);
  v.require(std::abs(z) <= 3.0, "one-step second moment");

  const double t = 50.0, h = 0.01;
  RunningStats dist;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng r(stream_seed(3, i));
    walker.reset();
    auto x = o;
    for (std::size_t k = 0; k < step_count(t, h); ++k) walker.step(x.mutable_coords(), h, r);
    dist.push(distance(o, x));
  }
  const double speed = dist.mean() / t;
  const double target = (n - 1) * std::sqrt(K);
  const double oracle = radial_euler_mean(n, K, t, h, 2000, 99) / t;
  v.note("radial_speed", speed).note("euler_speed", oracle);
  v.require(std::abs(speed / target - 1.0) <= 0.05, "radial speed");
  v.require(std::abs(speed - oracle) <= 3.0 * dist.stderr_of_mean() / t + 0.01 * oracle, "radial SDE oracle");
}

// ---- 3 -------------------------------------------------------------------

double heat_mass(double t) {
  auto f = [t](double r) {
    if (r == 0.0) return 0.0;
    // 4 pi sinh^2 r p_t(r), with sinh r = e^r (1 - e^{-2r}) / 2.
    return 4.0 * std::numbers::pi *
           std::exp(2.0 * (r + std::log1p(-std::exp(-2.0 * r)) - std::numbers::ln2) +
                    log_heat_kernel(t, r, 3, 1.0, HeatKernelMode::exact()));
  };
  return integrate_to_infinity(f, 0.0, {}, std::sqrt(t)).value;
}

void heat_kernel_checks(Verdict& v) {
  double worst = 0.0;
  for (double t : {0.1, 1.0, 5.0}) worst = std::max(worst, std::abs(heat_mass(t) - 1.0));
  v.note("mass_error", worst);
  v.require(worst <= 1e-6, "mass");

  // P_{t+s} f(o) by quadrature against the average of P_s f over simulated B_t.
  const auto o = ModelPoint::basepoint(3, 1.0);
  const auto ball = RadialProfile::ball_indicator(1.0);
  GeodesicWalker walker(3, 1.0);
  const double h = 1e-3;
  const std::pair<double, double> pairs[] = {{0.25, 0.25}, {0.5, 1.0}};
  for (const auto& [t, s] : pairs) {
    const double direct = heat_semigroup_apply(t + s, ball, o, SemigroupMethod::Quadrature).value;
    RunningStats acc;
    for (std::uint64_t i = 0; i < 4000; ++i) {
      Rng rng(stream_seed(17, i));
      walker.reset();
      auto x = o;
      for (std::size_t k = 0; k < step_count(t, h); ++k) walker.step(x.mutable_coords(), h, rng);
      acc.push(heat_semigroup_apply(s, ball, o, x, SemigroupMethod::Quadrature).value);
    }
    const double z = (acc.mean() - direct) / acc.stderr_of_mean();
    v.note("ck_z(" + std::to_string(t).substr(0, 4) + "," + std::to_string(s).substr(0, 4) + ")", z);
    v.require(std::abs(z) <= 3.0, "semigroup surrogate");
  }

  // Fit c, C on a coarse grid; the full grid must stay inside.
  auto log_ratio = [](double t, double d) { return log_heat_kernel(t, d, 3, 1.0, HeatKernelMode::exact()) - log_dm_h(t, d, 3); };
  double lo = kInf, hi = -kInf;
  for (double t : log_space(0.05, 5.0, 11))
    for (double d : lin_space(0.0, 10.0, 21)) {
      lo = std::min(lo, log_ratio(t, d));
      hi = std::max(hi, log_ratio(t, d));
    }
  const double c = 0.99 * std::exp(lo), C = 1.01 * std::exp(hi);
  int outside = 0;
  for (double t : log_space(0.05, 5.0, 101))
    for (double d : lin_space(0.0, 10.0, 201)) {
      const double r = std::exp(log_ratio(t, d));
      if (r < c || r > C) ++outside;
    }
  v.note("dm_c", c).note("dm_C", C).note("outside", outside);
  v.require(outside == 0, "comparison sandwich");
}

// ---- 4 -------------------------------------------------------------------

void kernel_checks(Verdict& v) {
  for (double a : {0.5, 0.6}) {
    const NoiseSpec spec{a, 1.0, 3, 1.0};
    const double l1 = g_alpha(spec, 1e-3, HeatKernelMode::exact()).log_value;
    const double l2 = g_alpha(spec, 1e-2, HeatKernelMode::exact()).log_value;
    const double slope = (l2 - l1) / std::log(10.0);
    v.note("slope(" + std::to_string(a).substr(0, 3) + ")", slope);
    v.require(std::abs(slope - (2.0 * a - 3.0)) <= 0.1, "small-d slope");
  }
  const auto grid = log_space(1e-3, 20.0, 401);
  for (double a : {0.5, 0.6, 0.75, 1.0, 1.5}) {
    const NoiseSpec spec{a, 1.0, 3, 1.0};
    const auto cal = calibrate_lower_constant(a, spec.K);
    bool below = true, monotone = true, lower_monotone = true;
    double prev = kInf, prev_lower = kInf;
    for (double d : grid) {
      const double g = g_alpha(spec, d, HeatKernelMode::exact()).log_value;
      const double gl = log_fractional_kernel_lower(a, 3, 1.0, d, cal.constant);
      below = below && gl <= g;
      monotone = monotone && g < prev;
      lower_monotone = lower_monotone && gl < prev_lower;
      prev = g;
      prev_lower = gl;
    }
    v.require(below, "lower kernel dominance at alpha=" + std::to_string(a));
    v.require(monotone && lower_monotone, "monotone at alpha=" + std::to_string(a));
  }
  v.note("grid_points", grid.size());
}

// ---- 5 -------------------------------------------------------------------

void bound_pipeline(Verdict& v) {
  for (double alpha : {0.5, 0.75, 1.0}) {
    BoundConfig c;
    c.spec = {alpha, 1.0, 3, 1.0};
    c.r = 2.0;
    const Regime reg = c.regime();
    double prev = f_profile(reg, 0.0, c);
    bool decreasing = true;
    for (double rho : log_space(1e-4, 1e4, 161)) {
      const double f = f_profile(reg, rho, c);
      decreasing = decreasing && f < prev;
      prev = f;
    }
    v.require(decreasing, "F decreasing, alpha=" + std::to_string(alpha));
    const double thr = theta_threshold(c);
    v.require(std::abs(thr - 1.0 / std::sqrt(c.C_chaos * f_profile(reg, 0.0, c))) <= 1e-12 * thr, "threshold formula");
    v.require(theta(0.999999 * thr, c) == 0.0 && theta(thr, c) == 0.0, "zero below threshold");
    v.require(theta(1.000001 * thr, c) < 1e-3, "continuity at threshold");
    double worst = 0.0;
    for (double m : log_space(1.001, 1e4, 40)) {
      const double beta = m * thr;
      worst = std::max(worst, std::abs(f_profile(reg, theta(beta, c), c) * c.C_chaos * beta * beta - 1.0));
    }
    v.note("roundtrip(" + std::to_string(alpha).substr(0, 4) + ")", worst);
    v.require(worst <= 1e-6, "round trip");
  }
  BoundConfig c;
  c.spec = {1.0, 1.0, 3, 1.0};
  c.r = 2.0;
  std::vector<double> lx, ly;
  for (double b : log_space(1e2, 1e4, 9)) {
    lx.push_back(std::log(b));
    ly.push_back(std::log(theta(b, c)));
  }
  const auto fit = fit_line(lx.data(), ly.data(), lx.size());
  const double e = upper_exponent(2, 0.5 * theta_threshold(c), c);
  v.note("theta_slope", fit.slope).note("upper_exponent_small_beta", e);
  v.require(std::abs(fit.slope - 2.0) <= 0.05, "theta slope");
  v.require(e == -(c.spec.n - 1) * (c.spec.n - 1) * c.spec.K / 2.0, "spectral gap exponent");
}

// ---- 6 -------------------------------------------------------------------

void feynman_kac_checks(Verdict& v) {
  FkConfig c;
  c.spec = {1.0, 0.0, 3, 1.0};
  c.p = 2;
  c.t_end = 0.5;
  c.dt = 5e-3;
  c.n_paths = 20000;
  c.seed = 101;
  const auto flat = moment_estimate(c);
  v.note("beta0_mean", flat.mean).note("beta0_stderr", flat.std_error);
  v.require(flat.mean == 1.0 && flat.std_error == 0.0, "beta = 0, constant data");

  c.u0 = InitialCondition::bump(1.0, 1.0);
  const auto bump = moment_estimate(c);
  const double pt = heat_semigroup_apply(c.t_end, c.u0.profile(), ModelPoint::basepoint(3, 1.0),
                                         SemigroupMethod::Quadrature).value;
  const double zb = (bump.mean - pt * pt) / bump.std_error;
  v.note("bump_z", zb);
  v.require(std::abs(zb) <= 3.0, "beta = 0, bump data");

  c.u0 = InitialCondition::constant();
  c.spec.beta = 0.05;
  const auto m = moment_estimate(c);
  const auto k1 = chaos_k1_estimate(c.spec, c.t_end, c.dt, c.n_paths, c.seed + 1);
  const double b2 = c.spec.beta * c.spec.beta;
  const double z = ((m.mean - 1.0) / b2 - k1.mean) / std::hypot(m.std_error / b2, k1.std_error);
  v.note("first_order_z", z).note("k1", k1.mean);
  v.require(std::abs(z) <= 3.0, "first-order chaos agreement");

  // The lower kernel can only lower the moment.
  c.spec.beta = 2.0;
  c.n_paths = 5000;
  const auto exact = moment_estimate(c);
  c.kernel_mode = KernelChoice::Lower;
  c.lower_constant = calibrate_lower_constant(2.0 * c.spec.alpha, c.spec.K).constant;
  const auto lower = moment_estimate(c);
  v.require(lower.bias == Bias::Lower && exact.mean >= lower.mean, "exact moment dominates lower-kernel moment");
}

// ---- 7 -------------------------------------------------------------------

void lower_bound_checks(Verdict& v) {
  const NoiseSpec spec{1.0, 0.0, 3, 1.0};
  ConstantLedger ledger;
  calibrate_lower_constant(2.0 * spec.alpha, spec.K, ledger);
  const auto k = LowerBoundConstants::from_ledger(spec.n, ledger);
  double worst = 0.0;
  for (int p : {2, 4, 8})
    for (double beta : {0.5, 5.0, 50.0, 500.0}) {
      const auto a = q_sup(p, beta, spec, k, kInf);
      const auto b = q_sup(p, beta, spec, k, kInf, 2 * kQScanPoints - 1);
      worst = std::max(worst, std::abs(a.value - b.value) / std::max(1.0, std::abs(b.value)));
    }
  v.note("q_sup_refinement", worst);
  v.require(worst <= 1e-6, "q_sup refinement");

  for (const auto& [name, kk] : {std::pair{"calibrated", k}, std::pair{"unit", LowerBoundConstants{1.0, k.dirichlet}}}) {
    double prev = kInf;
    bool ok = true;
    for (int p = 2; p <= 8; ++p) {
      const double bc = beta_critical(p, spec, kk, kInf);
      ok = ok && bc <= prev;
      prev = bc;
    }
    v.note(std::string("beta_c8_") + name, prev);
    v.require(ok, std::string("beta_c nonincreasing (") + name + ")");
  }

  const auto curve = ball_survival(1.0, 3, 1.0, 0.5, 2e-4, 20000, 7);
  const auto fit = survival_decay_fit(curve, 0.1, 0.45);
  const double bound = dirichlet_eigenvalue_upper(1.0, 3, 1.0, flat_ball_eigenvalue(3));
  v.note("exit_rate", fit.slope).note("dirichlet_bound", bound);
  v.require(std::abs(fit.slope / bound - 1.0) <= 0.10, "exit rate");
}

// ---- 8 -------------------------------------------------------------------

void sandwich_and_intermittency(Verdict& v) {
  const NoiseSpec spec{1.0, 0.5, 3, 1.0};
  const int p = 2;
  FkConfig c;
  c.spec = spec;
  c.p = p;
  c.dt = 0.01;
  c.n_paths = 20000;
  c.seed = 202;
  std::vector<double> ts, logs, errs;
  for (double t : {1.0, 2.0, 3.0, 4.0}) {
    c.t_end = t;
    const auto e = moment_estimate(c);
    ts.push_back(t);
    logs.push_back(e.log_mean);
    errs.push_back(std::exp(e.log_std_error - e.log_mean));  // stderr of log mean
  }
  const auto fit = fit_line(ts.data(), logs.data(), ts.size());
  // Least-squares slope error for independent log-mean errors.
  const double tbar = 2.5;
  double sxx = 0.0, var = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) sxx += (ts[i] - tbar) * (ts[i] - tbar);
  for (std::size_t i = 0; i < ts.size(); ++i) var += std::pow((ts[i] - tbar) / sxx * errs[i], 2);
  const double slope_err = std::sqrt(var);

  ConstantLedger ledger;
  calibrate_lower_constant(2.0 * spec.alpha, spec.K, ledger);
  const auto k = LowerBoundConstants::from_ledger(spec.n, ledger);
  const double lower = lower_exponent(p, spec.beta, spec, k, kInf);
  const auto bc = BoundConfig::from_ledger(spec, kInf, ledger);
  const double upper = upper_exponent(p, spec.beta, bc);
  const double g0 = fractional_kernel(2.0 * spec.alpha, 3, 1.0, 0.0, HeatKernelMode::exact()).value;
  const double slack = 3.0 * slope_err + spec.beta * spec.beta * p * (p - 1) * g0;
  v.note("slope", fit.slope).note("slope_err", slope_err).note("lower", lower).note("upper", upper).note("slack", slack);
  v.require(fit.slope >= lower - slack && fit.slope <= upper + slack, "exponent sandwich");

  // Intermittency just above the critical strength.
  const NoiseSpec base{1.0, 0.0, 3, 1.0};
  ConstantLedger plain;
  const double beta_c = beta_critical(4, base, plain, kInf);
  FkConfig ic;
  ic.spec = base;
  ic.spec.beta = 1.01 * beta_c;
  ic.dt = 1e-3;
  ic.n_paths = 20000;
  ic.seed = 303;
  const auto series = intermittency_ratio(4, 2, {0.1, 0.2, 0.3, 0.4}, ic);
  bool increasing = true;
  for (std::size_t i = 0; i + 1 < series.points.size(); ++i) {
    const double inc = series.points[i + 1].log_ratio - series.points[i].log_ratio;
    increasing = increasing && inc > 3.0 * series.increment_stderr[i];
    v.note("inc" + std::to_string(i), inc / series.increment_stderr[i]);
  }
  v.note("beta", ic.spec.beta);
  v.require(increasing, "intermittency log-ratio increments");
}

// ---- 9 -------------------------------------------------------------------

nlohmann::json numeric_record(const fs::path& jsonl) {
  std::ifstream in(jsonl);
  std::string line;
  std::getline(in, line);
  auto j = nlohmann::json::parse(line);
  j.erase("wall_seconds");
  return j;
}

void reproducibility(Verdict& v) {
  const auto root = fs::temp_directory_path() / "hyperpam_acceptance";
  fs::remove_all(root);
  std::ostringstream log;
  cli::RunConfig cfg;
  cfg.t_end = 0.3;
  cfg.dt = 0.005;
  cfg.n_paths = 4000;
  cfg.seed = 9;

  // First run, then a rerun from its manifest.
  const auto first = root / "first";
  v.require(cli::run_command("moment-mc", cfg, {}, first, cli::Format::Jsonl, log) == 0, "moment-mc run");
  v.require(cli::verify_manifest(first / "manifest.json").empty(), "manifest digests");
  const auto replay = cli::read_replay(first / "manifest.json");
  const auto again = root / "again";
  v.require(cli::run_command(replay.subcommand, cli::load_config(first / "manifest.json"), replay.options, again,
                             cli::Format::Jsonl, log) == 0,
            "replay run");
  v.require(numeric_record(first / "moments.jsonl") == numeric_record(again / "moments.jsonl"), "replayed moments");

  // Outputs without wall-time fields must match byte for byte.
  for (const auto* cmd : {"bounds", "kernel-table"}) {
    const auto a = root / (std::string(cmd) + "_a");
    const auto b = root / (std::string(cmd) + "_b");
    cli::run_command(cmd, cfg, {}, a, cli::Format::Csv, log);
    const auto r = cli::read_replay(a / "manifest.json");
    cli::run_command(r.subcommand, cli::load_config(a / "manifest.json"), r.options, b, cli::Format::Csv, log);
    const auto j = nlohmann::json::parse(std::ifstream(a / "manifest.json"));
    for (const auto& out : j["outputs"])
      v.require(cli::sha256_file(b / out["path"].get<std::string>()) == out["sha256"].get<std::string>(),
                std::string(cmd) + " replay digest " + out["path"].get<std::string>());
  }

  nlohmann::json by_workers[2];
  std::string interm[2];
  int i = 0;
  for (unsigned w : {1u, 8u}) {
    cfg.workers = w;
    const auto dir = root / ("w" + std::to_string(w));
    cli::run_command("moment-mc", cfg, {}, dir / "mc", cli::Format::Jsonl, log);
    by_workers[i] = numeric_record(dir / "mc" / "moments.jsonl");
    by_workers[i].erase("config");  // echoes the worker count
    cfg.p = 3;
    cfg.beta = 1.0;
    cli::run_command("intermittency", cfg, {{"q", "2"}}, dir / "im", cli::Format::Csv, log);
    for (const auto& e : fs::directory_iterator(dir / "im"))
      if (e.path().filename() != "manifest.json") interm[i] += cli::sha256_file(e.path());
    cfg.p = 2;
    cfg.beta = 0.5;
    ++i;
  }
  v.require(by_workers[0] == by_workers[1], "moment-mc worker invariance");
  v.require(!interm[0].empty() && interm[0] == interm[1], "intermittency worker invariance");
  v.note("mean", by_workers[0]["mean"].dump());
  fs::remove_all(root);
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Verdict&)>> criteria[] = {
      {"special functions", special_functions},
      {"geometry and paths", geometry_paths},
      {"heat kernel", heat_kernel_checks},
      {"kernel asymptotics", kernel_checks},
      {"bound pipeline", bound_pipeline},
      {"Feynman-Kac cross-validation", feynman_kac_checks},
      {"lower-bound machinery", lower_bound_checks},
      {"sandwich and intermittency", sandwich_and_intermittency},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s criterion %d (%s):%s (%.1fs)\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.str().c_str(),
                secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
