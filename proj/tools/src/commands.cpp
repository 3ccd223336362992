#include "hyperpam/cli/commands.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperpam/brownian.hpp"
#include "hyperpam/cli/manifest.hpp"
#include "hyperpam/cli/validate.hpp"
#include "hyperpam/errors.hpp"
#include "hyperpam/export.hpp"
#include "hyperpam/feynman_kac.hpp"
#include "hyperpam/heat_kernel.hpp"
#include "hyperpam/kernels.hpp"
#include "hyperpam/lower_bound.hpp"
#include "hyperpam/renewal.hpp"
#include "hyperpam/stats.hpp"

namespace hyperpam::cli {

namespace {

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto part = text.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return parts;
}

double option_double(const CommandContext& ctx, const std::string& name) {
  return parse_double(ctx.options.at(name), "--" + name);
}

int option_int(const CommandContext& ctx, const std::string& name) {
  const auto v = parse_int_list(ctx.options.at(name), "--" + name);
  if (v.size() != 1) throw ConfigError("--" + name + " expects one integer");
  return v.front();
}

bool option_bool(const CommandContext& ctx, const std::string& name) {
  const auto& v = ctx.options.at(name);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("--" + name + " expects true or false, got '" + v + "'");
}

std::ostream& log(const CommandContext& ctx) { return *ctx.log; }

std::string table_name(const CommandContext& ctx, const std::string& stem) {
  return stem + std::string(extension(ctx.format));
}

void save_table(const CommandContext& ctx, CommandResult& res, const std::string& stem, const Table& table) {
  const std::string name = table_name(ctx, stem);
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  write_table(out, table, ctx.format);
  if (!out) throw std::runtime_error("cannot write '" + (ctx.out_dir / name).string() + "'");
  res.outputs.push_back(name);
}

std::vector<double> equal_times(double t_end, int count) {
  std::vector<double> t;
  for (int i = 1; i <= count; ++i) t.push_back(t_end * i / count);
  return t;
}

// Kernel lower-bound constants; calibrated against the exact kernel when n = 3
// and the user did not pin gbar.C.
LowerBoundConstants lower_constants(const CommandContext& ctx, ConstantLedger& ledger, double order) {
  if (ctx.options.count("calibrate") && option_bool(ctx, "calibrate") && ctx.config.n == 3 &&
      !ledger.find(ledger_keys::kGbar)) {
    calibrate_lower_constant(order, ctx.config.K, ledger);
  }
  return LowerBoundConstants::from_ledger(ctx.config.n, ledger);
}

std::vector<HeatKernelMode> heat_modes(const RunConfig& cfg, ConstantLedger& ledger) {
  std::vector<HeatKernelMode> modes;
  if (cfg.n == 3) modes.push_back(HeatKernelMode::exact());
  modes.push_back(HeatKernelMode::upper(ledger.resolve(ledger_keys::kDmUpper, 1.0)));
  modes.push_back(HeatKernelMode::lower(ledger.resolve(ledger_keys::kDmLower, 1.0)));
  return modes;
}

long long sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// ---------------------------------------------------------------------------

CommandResult cmd_kernel_table(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const auto d = log_grid(option_double(ctx, "d-min"), option_double(ctx, "d-max"), option_int(ctx, "points"));
  const auto modes = heat_modes(cfg, res.ledger);

  Table g{{"d", "value", "mode", "alpha", "n", "K"}, {}};
  for (const auto& mode : modes) {
    for (double x : d) {
      const auto kb = fractional_kernel(cfg.alpha, cfg.n, cfg.K, x, mode);
      g.add({x, kb.value, std::string(to_string(mode.kind)), cfg.alpha, (long long)cfg.n, cfg.K});
    }
  }
  save_table(ctx, res, "g_alpha", g);

  double constant = 1.0;
  if (auto e = res.ledger.find(ledger_keys::kGbar)) {
    constant = e->value;
  } else if (cfg.n == 3 && option_bool(ctx, "calibrate")) {
    constant = calibrate_lower_constant(cfg.alpha, cfg.K, res.ledger).constant;
  } else {
    constant = res.ledger.resolve(ledger_keys::kGbar, 1.0);
  }
  Table gb{{"d", "value", "mode", "alpha", "n", "K"}, {}};
  for (double x : d) {
    gb.add({x, fractional_kernel_lower(cfg.alpha, cfg.n, cfg.K, x, constant), std::string("LOWER"), cfg.alpha,
            (long long)cfg.n, cfg.K});
  }
  save_table(ctx, res, "gbar_alpha", gb);

  Table hk{{"t", "d", "value", "mode", "n", "K"}, {}};
  for (double t : parse_double_list(ctx.options.at("times"), "--times")) {
    for (const auto& mode : modes) {
      for (double x : d) {
        hk.add({t, x, heat_kernel(t, x, cfg.n, cfg.K, mode).value, std::string(to_string(mode.kind)),
                (long long)cfg.n, cfg.K});
      }
    }
  }
  save_table(ctx, res, "heat_kernel", hk);
  log(ctx) << "kernel-table: " << d.size() << " distances, gbar.C = " << constant << "\n";
  return res;
}

CommandResult cmd_bm_sample(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const ModelPoint o = ModelPoint::basepoint(cfg.n, cfg.K);

  const int show = option_int(ctx, "show");
  for (int k = 0; k < show; ++k) {
    const auto path = brownian_path(o, cfg.t_end, cfg.dt, stream_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    const std::string name = "path_" + std::to_string(k) + ".csv";
    std::ofstream out(ctx.out_dir / name, std::ios::binary);
    write_path_csv(out, path);
    res.outputs.push_back(name);
  }

  // Distances at checkpoints: step counts rounded from the requested times.
  const std::size_t steps = step_count(cfg.t_end, cfg.dt);
  std::vector<double> times = ctx.options.at("times").empty() ? equal_times(cfg.t_end, 10)
                                                              : parse_double_list(ctx.options.at("times"), "--times");
  std::vector<std::size_t> marks;
  for (double t : times) {
    if (!(t > 0.0) || t > cfg.t_end * (1 + 1e-12)) throw ConfigError("--times must lie in (0, mc.t_end]");
    marks.push_back(std::min(steps, std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / cfg.dt)))));
  }
  std::vector<RunningStats> dist(marks.size());
  GeodesicWalker walker(cfg.n, cfg.K);
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    Rng rng(stream_seed(cfg.seed, i));
    walker.reset();
    ModelPoint x = o;
    std::size_t m = 0;
    for (std::size_t k = 1; k <= steps && m < marks.size(); ++k) {
      const double h = (k == steps) ? cfg.t_end - cfg.dt * static_cast<double>(steps - 1) : cfg.dt;
      walker.step(x.mutable_coords(), h, rng);
      while (m < marks.size() && marks[m] == k) dist[m++].push(distance(o, x));
    }
  }
  Table speed{{"t", "mean_distance", "distance_stderr", "mean_speed", "speed_stderr", "target_speed"}, {}};
  const double target = (cfg.n - 1) * std::sqrt(cfg.K);
  for (std::size_t m = 0; m < marks.size(); ++m) {
    const double t = marks[m] == steps ? cfg.t_end : cfg.dt * static_cast<double>(marks[m]);
    speed.add({t, dist[m].mean(), dist[m].stderr_of_mean(), dist[m].mean() / t, dist[m].stderr_of_mean() / t, target});
  }
  save_table(ctx, res, "radial_speed", speed);
  log(ctx) << "bm-sample: " << cfg.n_paths << " paths; speed at t = " << cfg.t_end << ": "
           << dist.back().mean() / cfg.t_end << " (target " << target << ")\n";
  return res;
}

CommandResult cmd_moment_mc(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const FkConfig fk = cfg.fk(res.ledger);
  const std::string which = ctx.options.at("estimator");
  if (which != "auto" && which != "moment" && which != "chaos" && which != "both") {
    throw ConfigError("--estimator must be auto, moment, chaos or both");
  }
  const bool constant_u0 = cfg.u0_kind == InitialCondition::Kind::Constant;
  const bool want_moment = which != "chaos";
  const bool want_chaos = which == "chaos" || which == "both" || (which == "auto" && constant_u0);

  std::vector<std::pair<std::string, MomentEstimate>> records;
  if (want_moment) records.emplace_back("moment", moment_estimate(fk));
  if (want_chaos) {
    records.emplace_back("chaos_k1", chaos_k1_estimate(fk.spec, fk.t_end, fk.dt, fk.n_paths, fk.seed, fk.workers));
  }
  if (option_bool(ctx, "dt-check")) {
    const auto conv = check_dt_convergence(fk);
    records.emplace_back("moment_dt_half", conv.fine);
    log(ctx) << "dt check: " << (conv.converged ? "converged" : "NOT converged") << " (" << conv.coarse.mean
             << " vs " << conv.fine.mean << ")\n";
  }

  const std::string name = table_name(ctx, "moments");
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  if (ctx.format == Format::Jsonl) {
    for (const auto& [est, m] : records) write_moment_jsonl(out, est, fk, m);
  } else {
    Table t{{"estimator", "mean", "stderr", "log_mean", "log_stderr", "bias", "n_paths", "seed", "wall_seconds"}, {}};
    for (const auto& [est, m] : records) {
      t.add({est, m.mean, m.std_error, m.log_mean, m.log_std_error, std::string(to_string(m.bias)),
             (long long)m.n_paths, std::to_string(m.seed), m.wall_seconds});
    }
    write_table(out, t, Format::Csv);
  }
  res.outputs.push_back(name);
  for (const auto& [est, m] : records) {
    log(ctx) << est << ": mean " << m.mean << " +- " << m.std_error << " [" << to_string(m.bias) << "]\n";
  }
  return res;
}

CommandResult cmd_bounds(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const BoundConfig bc = cfg.bounds(res.ledger);
  bc.validate();
  const Regime regime = bc.regime();

  std::vector<double> rhos;
  if (ctx.options.at("rhos").empty()) {
    rhos.push_back(0.0);
    for (double r : log_grid(1e-3, 1e3, 61)) rhos.push_back(r);
  } else {
    rhos = parse_double_list(ctx.options.at("rhos"), "--rhos");
  }
  Table f{{"rho", "F", "I_short", "I_long", "regime"}, {}};
  for (double rho : rhos) {
    double short_part = 0.0;
    switch (regime) {
      case Regime::Rough: short_part = renewal_i1(rho, bc); break;
      case Regime::Critical: short_part = renewal_i2(rho, bc); break;
      case Regime::Smooth: short_part = renewal_i3(rho, bc); break;
    }
    f.add({rho, f_profile(regime, rho, bc), short_part, renewal_i4(rho, bc), (long long)regime_index(regime)});
  }
  save_table(ctx, res, "f_profile", f);

  const auto betas = parse_double_list(ctx.options.at("betas"), "--betas");
  const auto ps = parse_int_list(ctx.options.at("ps"), "--ps");
  const auto k = lower_constants(ctx, res.ledger, 2.0 * cfg.alpha);
  const NoiseSpec spec = cfg.noise();
  Table b{{"beta", "p", "r", "theta", "upper_exponent", "q_sup", "r_star", "lower_exponent", "regime"}, {}};
  for (const auto& row : bound_table(betas, ps, bc)) {
    const QSup q = q_sup(row.p, row.beta, spec, k, cfg.q_radius());
    b.add({row.beta, (long long)row.p, row.r, row.theta, row.upper_exponent, q.value, q.r_star,
           lower_exponent(row.p, row.beta, spec, k, cfg.q_radius()), (long long)regime_index(row.regime)});
  }
  save_table(ctx, res, "bounds", b);
  log(ctx) << "bounds: regime " << regime_index(regime) << ", theta threshold " << theta_threshold(bc) << "\n";
  return res;
}

// Smallest beta with a positive upper exponent at moment p.
double upper_critical_beta(int p, const BoundConfig& bc) {
  auto f = [&](double beta) {
    const double e = upper_exponent(p, beta, bc);
    return e > 0.0 ? e : -1.0;
  };
  double hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  const auto [a, b] = boost::math::tools::bisect(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(40));
  return 0.5 * (a + b);
}

CommandResult cmd_phase_diagram(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const BoundConfig bc = cfg.bounds(res.ledger);
  bc.validate();
  const NoiseSpec spec = cfg.noise();
  const auto k = lower_constants(ctx, res.ledger, 2.0 * cfg.alpha);
  const auto betas = ctx.options.at("betas").empty() ? log_grid(1e-2, 1e2, 25)
                                                    : parse_double_list(ctx.options.at("betas"), "--betas");
  const auto ps = parse_int_list(ctx.options.at("ps"), "--ps");
  const double rq = cfg.q_radius();

  Table phase{{"beta", "p", "upper_exponent", "lower_exponent", "upper_sign", "lower_sign"}, {}};
  for (double beta : betas) {
    for (int p : ps) {
      const double up = upper_exponent(p, beta, bc);
      const double lo = lower_exponent(p, beta, spec, k, rq);
      phase.add({beta, (long long)p, up, lo, sign_of(up), sign_of(lo)});
    }
  }
  save_table(ctx, res, "phase", phase);

  Table bcurve{{"p", "beta_critical_lower", "beta_critical_upper"}, {}};
  for (int p : ps) bcurve.add({(long long)p, beta_critical(p, spec, k, rq), upper_critical_beta(p, bc)});
  save_table(ctx, res, "beta_critical", bcurve);

  Table pcurve{{"beta", "p_critical"}, {}};
  for (double beta : betas) {
    long long pc = -1;
    if (beta > 0.0) {
      try {
        pc = p_critical(beta, spec, k, rq);
      } catch (const DomainError&) {
      }
    }
    pcurve.add({beta, pc});
  }
  save_table(ctx, res, "p_critical", pcurve);
  log(ctx) << "phase-diagram: " << betas.size() << " x " << ps.size() << " grid\n";
  return res;
}

CommandResult cmd_slope_check(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const std::string axis_name = ctx.options.at("axis");
  if (axis_name != "beta" && axis_name != "p") throw ConfigError("--axis must be beta or p");
  const SlopeAxis axis = axis_name == "beta" ? SlopeAxis::Beta : SlopeAxis::P;
  std::vector<double> grid;
  if (!ctx.options.at("grid").empty()) grid = parse_double_list(ctx.options.at("grid"), "--grid");
  else if (axis == SlopeAxis::Beta) grid = log_grid(1e2, 1e4, 9);
  else grid = {4, 6, 8, 12, 16, 24, 32};
  double fixed = 0.0;
  if (!ctx.options.at("fixed").empty()) fixed = option_double(ctx, "fixed");
  else fixed = axis == SlopeAxis::Beta ? static_cast<double>(cfg.p) : 1e3;

  const auto k = lower_constants(ctx, res.ledger, 2.0 * cfg.alpha);
  const SlopeReport rep = asymptotic_slope_check(axis, grid, fixed, cfg.noise(), k, cfg.q_radius());

  Table series{{"param", "exponent", "r_star"}, {}};
  for (std::size_t i = 0; i < rep.params.size(); ++i) series.add({rep.params[i], rep.exponents[i], rep.r_star[i]});
  save_table(ctx, res, "slope", series);
  Table summary{{"axis", "case", "fixed", "fitted_slope", "fit_stderr", "stated_slope", "balance_slope",
                 "normalized_spread", "asserted", "pass"},
                {}};
  summary.add({to_string(axis), std::string(1, rep.regime_case), rep.fixed, rep.fit.slope, rep.fit.slope_stderr,
               rep.stated_slope, rep.balance_slope, rep.normalized_spread, (long long)rep.asserted,
               (long long)rep.pass});
  save_table(ctx, res, "slope_summary", summary);
  log(ctx) << "slope-check (" << to_string(axis) << ", case " << rep.regime_case << "): fitted " << rep.fit.slope
           << ", stated " << rep.stated_slope << ", balance " << rep.balance_slope;
  if (rep.asserted) log(ctx) << (rep.pass ? "  PASS" : "  FAIL");
  log(ctx) << "\n";
  res.exit_code = rep.asserted && !rep.pass ? 1 : 0;
  return res;
}

CommandResult cmd_intermittency(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const RunConfig& cfg = ctx.config;
  const FkConfig fk = cfg.fk(res.ledger);
  const int q = option_int(ctx, "q");
  const auto times = ctx.options.at("times").empty() ? equal_times(cfg.t_end, 4)
                                                    : parse_double_list(ctx.options.at("times"), "--times");
  const auto series = intermittency_ratio(cfg.p, q, times, fk);
  Table t{{"t", "ratio", "stderr", "log_ratio", "log_ratio_stderr", "increment_stderr", "p", "q"}, {}};
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const auto& pt = series.points[i];
    const double inc = i == 0 ? std::numeric_limits<double>::quiet_NaN() : series.increment_stderr[i - 1];
    t.add({pt.t, pt.ratio, pt.stderr, pt.log_ratio, pt.log_ratio_stderr, inc, (long long)series.p,
           (long long)series.q});
  }
  save_table(ctx, res, "intermittency", t);
  log(ctx) << "intermittency: p = " << series.p << ", q = " << series.q << ", final ratio "
           << series.points.back().ratio << "\n";
  return res;
}

CommandResult cmd_validate(const CommandContext& ctx) {
  CommandResult res;
  res.ledger = ctx.config.ledger();
  const auto checks = run_validation(ctx.config, ctx.log);
  Table t{{"check", "result", "detail"}, {}};
  std::size_t failed = 0;
  for (const auto& c : checks) {
    t.add({c.name, std::string(c.pass ? "PASS" : "FAIL"), c.detail});
    if (!c.pass) ++failed;
  }
  save_table(ctx, res, "validate", t);
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    log(ctx) << (c.pass ? "PASS  " : "FAIL  ") << c.name << std::string(width + 2 - c.name.size(), ' ') << c.detail
             << "\n";
  }
  log(ctx) << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  res.exit_code = failed == 0 ? 0 : 1;
  return res;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(text)) out.push_back(parse_double(part, what));
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  for (auto part : split(text)) {
    const double v = parse_double(part, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw ConfigError(std::string(what) + ": expected integers, got '" + std::string(part) + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> all = {
      {"kernel-table",
       "Fractional kernel, closed-form lower kernel and heat kernel tables",
       {{"d-min", "0.001", "smallest distance"},
        {"d-max", "10", "largest distance"},
        {"points", "121", "log-spaced distances"},
        {"times", "0.1,1,5", "heat kernel times"},
        {"calibrate", "true", "fit gbar.C against the exact kernel when n = 3 and it is not set"}},
       cmd_kernel_table},
      {"bm-sample",
       "Sample Brownian paths and radial speed statistics",
       {{"show", "1", "number of full paths written"}, {"times", "", "checkpoint times (default: 10 up to t_end)"}},
       cmd_bm_sample},
      {"moment-mc",
       "Feynman-Kac moment estimate and first chaos coefficient",
       {{"estimator", "auto", "moment, chaos, both or auto (both for constant u0)"},
        {"dt-check", "false", "also run at dt/2"}},
       cmd_moment_mc},
      {"bounds",
       "Renewal profile, growth rate and upper/lower exponent tables",
       {{"betas", "0.01,0.1,0.5,1,2,5,10,20,50,100", "beta values"},
        {"ps", "2,3,4", "moment orders"},
        {"rhos", "", "renewal profile abscissae (default: 0 and a log grid)"},
        {"calibrate", "true", "fit gbar.C against the exact kernel when n = 3 and it is not set"}},
       cmd_bounds},
      {"phase-diagram",
       "Signs of the exponents on a (beta, p) grid with critical curves",
       {{"betas", "", "beta values (default: 25 log-spaced in [0.01, 100])"},
        {"ps", "2,3,4,5,6,7,8", "moment orders"},
        {"calibrate", "true", "fit gbar.C against the exact kernel when n = 3 and it is not set"}},
       cmd_phase_diagram},
      {"slope-check",
       "Large-parameter growth of the lower exponent",
       {{"axis", "beta", "beta or p"},
        {"grid", "", "parameter grid (default: [1e2, 1e4] for beta, 4..32 for p)"},
        {"fixed", "", "p on the beta axis (default moment.p), beta on the p axis (default 1e3)"},
        {"calibrate", "false",
         "fit gbar.C first; a small constant pushes the asymptotic range to larger parameters"}},
       cmd_slope_check},
      {"intermittency",
       "Moment ratio E[u^p]^(1/p) / E[u^q]^(1/q) on a time grid",
       {{"q", "2", "lower moment order"}, {"times", "", "time grid (default: 4 up to t_end)"}},
       cmd_intermittency},
      {"validate", "Run the property checks and print a pass/fail table", {}, cmd_validate},
  };
  return all;
}

const CommandInfo& find_command(std::string_view name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

int run_command(std::string_view name, const RunConfig& config, std::map<std::string, std::string> options,
                const std::filesystem::path& out_dir, Format format, std::ostream& log) {
  const CommandInfo& info = find_command(name);
  for (const auto& o : info.options) options.try_emplace(o.name, o.default_value);
  for (const auto& [k, v] : options) {
    bool known = false;
    for (const auto& o : info.options) known = known || o.name == k;
    if (!known) throw ConfigError(std::string(name) + ": unknown option --" + k);
  }
  config.validate();
  std::filesystem::create_directories(out_dir);

  CommandContext ctx{config, options, out_dir, format, &log};
  CommandResult res = info.run(ctx);

  Manifest m;
  m.subcommand = info.name;
  m.config = config;
  m.options = options;
  m.ledger = res.ledger;
  write_manifest(out_dir, m, res.outputs);
  return res.exit_code;
}

}  // namespace hyperpam::cli
