#include "hyperpam/feynman_kac.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hyperpam/brownian.hpp"
#include "hyperpam/errors.hpp"
#include "hyperpam/geometry.hpp"
#include "hyperpam/rng.hpp"
#include "hyperpam/stats.hpp"

namespace hyperpam {

RadialProfile InitialCondition::profile() const {
  if (kind == Kind::Constant) return RadialProfile::constant(epsilon);
  return RadialProfile::ball_indicator(R, epsilon);
}

std::string_view to_string(InitialCondition::Kind kind) {
  return kind == InitialCondition::Kind::Constant ? "CONSTANT" : "BUMP";
}

InitialCondition::Kind initial_kind_from_string(std::string_view s) {
  if (s == "CONSTANT" || s == "constant") return InitialCondition::Kind::Constant;
  if (s == "BUMP" || s == "bump") return InitialCondition::Kind::Bump;
  throw ConfigError("u0.kind must be CONSTANT or BUMP, got '" + std::string(s) + "'");
}

std::string_view to_string(KernelChoice choice) { return choice == KernelChoice::Exact ? "EXACT" : "LOWER"; }

KernelChoice kernel_choice_from_string(std::string_view s) {
  if (s == "EXACT" || s == "exact") return KernelChoice::Exact;
  if (s == "LOWER" || s == "lower") return KernelChoice::Lower;
  throw ConfigError("kernel.mode must be EXACT or LOWER, got '" + std::string(s) + "'");
}

std::string_view to_string(Bias bias) { return bias == Bias::Unbiased ? "UNBIASED" : "LOWER"; }

void FkConfig::validate() const {
  spec.validate();
  if (!spec.dalang_ok()) {
    std::ostringstream msg;
    msg << "alpha = " << spec.alpha << " violates the Dalang condition alpha > (n-2)/4 = " << (spec.n - 2) / 4.0;
    throw ConfigError(msg.str());
  }
  if (p < 2) throw ConfigError("moment.p must be an integer >= 2");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("mc.t_end must be > 0");
  if (!(dt > 0.0) || dt > t_end) throw ConfigError("mc.dt must lie in (0, t_end]");
  if (n_paths < 2) throw ConfigError("mc.n_paths must be >= 2");
  if (workers < 1) throw ConfigError("mc.workers must be >= 1");
  if (!(u0.epsilon > 0.0) || !std::isfinite(u0.epsilon)) throw ConfigError("u0.epsilon must be > 0");
  if (u0.kind == InitialCondition::Kind::Bump && !(u0.R > 0.0)) throw ConfigError("u0.R must be > 0");
  if (!(delta_floor >= 0.0)) throw ConfigError("kernel.delta_floor must be >= 0");
  if (kernel_mode == KernelChoice::Exact && spec.n != 3) {
    throw ConfigError("kernel.mode EXACT needs n = 3; use LOWER");
  }
  if (kernel_mode == KernelChoice::Lower && !(lower_constant > 0.0)) {
    throw ConfigError("lower kernel constant must be > 0");
  }
}

KernelTableSpec FkConfig::kernel_spec() const {
  KernelTableSpec ks;
  ks.order = 2.0 * spec.alpha;
  ks.n = spec.n;
  ks.K = spec.K;
  ks.mode = HeatKernelMode::exact();
  ks.delta_floor = delta_floor;
  if (kernel_mode == KernelChoice::Lower) ks.lower_constant = lower_constant;
  return ks;
}

bool MomentEstimate::same_numbers(const MomentEstimate& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  return same(mean, o.mean) && same(std_error, o.std_error) && n_paths == o.n_paths && seed == o.seed &&
         bias == o.bias && same(log_mean, o.log_mean) && same(log_std_error, o.log_std_error);
}

namespace {

constexpr std::size_t kBlock = 256;

// One ensemble of replicates, each with `paths` Brownian motions from the
// basepoint. For every replicate, checkpoint and subset size m it stores
//   sum_{j<m} log u0(B^j_t) + beta2 * S_m(t),  S_m = sum_{i != k < m} int_0^t G.
struct Ensemble {
  int n = 3;
  double K = 1.0;
  int paths = 2;
  std::vector<double> checkpoints;
  std::vector<int> subsets;
  double beta2 = 0.0;
  double dt = 1e-3;
  const KernelTable* table = nullptr;
  InitialCondition u0;
  std::uint64_t seed = 1;
  std::size_t replicates = 0;
  unsigned workers = 1;
};

struct EnsembleOutput {
  std::vector<double> logs;  // [replicate][checkpoint][subset]
  bool capped = false;
};

void run_block(const Ensemble& e, std::size_t first, std::size_t last, std::vector<double>& logs,
               bool& capped) {
  const auto np = static_cast<std::size_t>(e.paths);
  const std::size_t dim = static_cast<std::size_t>(e.n) + 1;
  const std::size_t n_pairs = np * (np - 1) / 2;
  const std::size_t ncp = e.checkpoints.size();
  const std::size_t nsub = e.subsets.size();
  const ModelPoint origin = ModelPoint::basepoint(e.n, e.K);
  const double sk = std::sqrt(e.K);
  const double x0_bump = std::cosh(sk * e.u0.R) / sk;
  const double log_eps = std::log(e.u0.epsilon);

  GeodesicWalker walker(e.n, e.K);
  std::vector<double> pos(np * dim);
  std::vector<double> g_prev(n_pairs), pair_int(n_pairs);

  auto kernel_all = [&](std::vector<double>& out) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t k = i + 1; k < np; ++k, ++idx) {
        const double d = distance(std::span<const double>(&pos[i * dim], dim),
                                  std::span<const double>(&pos[k * dim], dim), e.K);
        if (e.table->caps(d)) capped = true;
        out[idx] = (*e.table)(d);
      }
    }
  };

  std::vector<double> g_now(n_pairs);
  for (std::size_t rep = first; rep < last; ++rep) {
    Rng rng(stream_seed(e.seed, rep));
    walker.reset();
    for (std::size_t j = 0; j < np; ++j) std::copy(origin.coords().begin(), origin.coords().end(), &pos[j * dim]);
    std::fill(pair_int.begin(), pair_int.end(), 0.0);
    const bool with_kernel = e.beta2 != 0.0;
    if (with_kernel) kernel_all(g_prev);

    double t = 0.0;
    for (std::size_t c = 0; c < ncp; ++c) {
      const double seg = e.checkpoints[c] - t;
      if (seg > 0.0) {
        const std::size_t steps = step_count(seg, std::min(e.dt, seg));
        for (std::size_t s = 1; s <= steps; ++s) {
          const double h = (s == steps) ? seg - static_cast<double>(steps - 1) * e.dt : e.dt;
          for (std::size_t j = 0; j < np; ++j) walker.step(std::span<double>(&pos[j * dim], dim), h, rng);
          if (with_kernel) {
            kernel_all(g_now);
            for (std::size_t q = 0; q < n_pairs; ++q) pair_int[q] += 0.5 * h * (g_prev[q] + g_now[q]);
            std::swap(g_prev, g_now);
          }
        }
        t = e.checkpoints[c];
      }
      for (std::size_t m = 0; m < nsub; ++m) {
        const auto sub = static_cast<std::size_t>(e.subsets[m]);
        double log_u0 = 0.0;
        for (std::size_t j = 0; j < sub; ++j) {
          if (e.u0.kind == InitialCondition::Kind::Bump && pos[j * dim] > x0_bump) {
            log_u0 = -std::numeric_limits<double>::infinity();
            break;
          }
          log_u0 += log_eps;
        }
        double s_sum = 0.0;
        if (with_kernel) {
          std::size_t idx = 0;
          for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t k = i + 1; k < np; ++k, ++idx) {
              if (k < sub) s_sum += pair_int[idx];
            }
          }
        }
        logs[(rep * ncp + c) * nsub + m] = log_u0 + e.beta2 * 2.0 * s_sum;
      }
    }
  }
}

EnsembleOutput run_ensemble(const Ensemble& e) {
  EnsembleOutput out;
  out.logs.assign(e.replicates * e.checkpoints.size() * e.subsets.size(), 0.0);
  const std::size_t blocks = (e.replicates + kBlock - 1) / kBlock;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, e.workers), blocks));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> capped{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      bool local_capped = false;
      for (std::size_t b = next++; b < blocks; b = next++) {
        run_block(e, b * kBlock, std::min(e.replicates, (b + 1) * kBlock), out.logs, local_capped);
      }
      if (local_capped) capped = true;
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  out.capped = capped;
  return out;
}

MomentEstimate summarize(const std::vector<double>& logs, std::size_t stride, std::size_t offset,
                         std::size_t count) {
  LogScaledStats stats;
  for (std::size_t i = 0; i < count; ++i) stats.push_log(logs[i * stride + offset]);
  MomentEstimate est;
  est.n_paths = count;
  est.log_mean = stats.log_mean();
  est.log_std_error = stats.log_stderr();
  est.mean = std::exp(est.log_mean);
  est.std_error = std::exp(est.log_std_error);
  return est;
}

Ensemble ensemble_from(const FkConfig& cfg, const KernelTable* table) {
  Ensemble e;
  e.n = cfg.spec.n;
  e.K = cfg.spec.K;
  e.paths = cfg.p;
  e.checkpoints = {cfg.t_end};
  e.subsets = {cfg.p};
  e.beta2 = cfg.spec.beta * cfg.spec.beta;
  e.dt = cfg.dt;
  e.table = table;
  e.u0 = cfg.u0;
  e.seed = cfg.seed;
  e.replicates = cfg.n_paths;
  e.workers = cfg.workers;
  return e;
}

Bias bias_of(const FkConfig& cfg, bool capped) {
  return (cfg.kernel_mode == KernelChoice::Lower || capped) ? Bias::Lower : Bias::Unbiased;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

MomentEstimate moment_estimate(const FkConfig& cfg, const KernelTable& table) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Ensemble e = ensemble_from(cfg, &table);
  const EnsembleOutput out = run_ensemble(e);
  MomentEstimate est = summarize(out.logs, 1, 0, cfg.n_paths);
  est.seed = cfg.seed;
  est.bias = bias_of(cfg, out.capped);
  est.wall_seconds = seconds_since(start);
  return est;
}

MomentEstimate moment_estimate(const FkConfig& cfg) {
  cfg.validate();
  if (cfg.spec.beta == 0.0) {
    const auto start = std::chrono::steady_clock::now();
    const EnsembleOutput out = run_ensemble(ensemble_from(cfg, nullptr));
    MomentEstimate est = summarize(out.logs, 1, 0, cfg.n_paths);
    est.seed = cfg.seed;
    est.bias = bias_of(cfg, false);
    est.wall_seconds = seconds_since(start);
    return est;
  }
  const KernelTable table(cfg.kernel_spec());
  return moment_estimate(cfg, table);
}

MomentEstimate chaos_k1_estimate(const NoiseSpec& spec, double t, double dt, std::size_t n_paths,
                                 std::uint64_t seed, unsigned workers) {
  FkConfig cfg;
  cfg.spec = spec;
  cfg.spec.beta = 1.0;
  cfg.p = 2;
  cfg.t_end = t;
  cfg.dt = std::min(dt, t);
  cfg.n_paths = n_paths;
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const KernelTable table(cfg.kernel_spec());
  // beta^2 = 1 and u0 = 1, so the stored log weight is S itself.
  const EnsembleOutput out = run_ensemble(ensemble_from(cfg, &table));
  RunningStats stats;
  for (double s : out.logs) stats.push(s);
  MomentEstimate est;
  est.mean = stats.mean();
  est.std_error = stats.stderr_of_mean();
  est.n_paths = n_paths;
  est.seed = seed;
  est.bias = out.capped ? Bias::Lower : Bias::Unbiased;
  est.log_mean = std::log(est.mean);
  est.log_std_error = std::log(est.std_error);
  est.wall_seconds = seconds_since(start);
  return est;
}

DtConvergence check_dt_convergence(const FkConfig& cfg) {
  DtConvergence out;
  out.coarse = moment_estimate(cfg);
  FkConfig half = cfg;
  half.dt = 0.5 * cfg.dt;
  out.fine = moment_estimate(half);
  const double se = std::hypot(out.coarse.std_error, out.fine.std_error);
  out.converged = std::abs(out.coarse.mean - out.fine.mean) < std::max(se, 1e-300);
  return out;
}

IntermittencySeries intermittency_ratio(int p, int q, const std::vector<double>& t_grid, const FkConfig& cfg) {
  if (q < 2 || q > p) throw ConfigError("intermittency_ratio: need 2 <= q <= p");
  if (t_grid.empty()) throw ConfigError("intermittency_ratio: empty time grid");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw ConfigError("intermittency_ratio: time grid must be positive and increasing");
    }
  }
  FkConfig base = cfg;
  base.p = p;
  base.t_end = t_grid.back();
  base.dt = std::min(cfg.dt, t_grid.front());
  base.validate();

  std::unique_ptr<KernelTable> table;
  if (base.spec.beta != 0.0) table = std::make_unique<KernelTable>(base.kernel_spec());
  Ensemble e = ensemble_from(base, table.get());
  e.checkpoints = t_grid;
  e.subsets = {p, q};
  const EnsembleOutput out = run_ensemble(e);

  const std::size_t ncp = t_grid.size();
  const std::size_t N = base.n_paths;
  const std::size_t stride = ncp * 2;
  IntermittencySeries series;
  series.p = p;
  series.q = q;

  // Column c = 2 k + m holds replicate values exp(log - shift_c).
  std::vector<double> shift(stride, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t c = 0; c < stride; ++c) shift[c] = std::max(shift[c], out.logs[i * stride + c]);
  }
  for (double& s : shift) {
    if (!std::isfinite(s)) s = 0.0;
  }
  auto scaled = [&](std::size_t i, std::size_t c) { return std::exp(out.logs[i * stride + c] - shift[c]); };
  std::vector<double> mean(stride, 0.0);
  for (std::size_t c = 0; c < stride; ++c) {
    RunningStats st;
    for (std::size_t i = 0; i < N; ++i) st.push(scaled(i, c));
    mean[c] = st.mean();
  }
  // Standard error of sum_c w_c Y_c by the sample variance of the combination.
  auto combo_stderr = [&](const std::vector<std::pair<std::size_t, double>>& weights) {
    RunningStats st;
    for (std::size_t i = 0; i < N; ++i) {
      double z = 0.0;
      for (const auto& [c, w] : weights) z += w * scaled(i, c);
      st.push(z);
    }
    return st.stderr_of_mean();
  };
  const double ip = 1.0 / p;
  const double iq = 1.0 / q;
  for (std::size_t k = 0; k < ncp; ++k) {
    const std::size_t cp = 2 * k;
    const std::size_t cq = 2 * k + 1;
    IntermittencyPoint pt;
    pt.t = t_grid[k];
    if (!(mean[cp] > 0.0) || !(mean[cq] > 0.0)) {
      throw DomainError("intermittency_ratio: a moment estimate vanished (all paths left the bump)");
    }
    pt.log_ratio = ip * (std::log(mean[cp]) + shift[cp]) - iq * (std::log(mean[cq]) + shift[cq]);
    pt.ratio = std::exp(pt.log_ratio);
    pt.log_ratio_stderr = combo_stderr({{cp, ip / mean[cp]}, {cq, -iq / mean[cq]}});
    pt.stderr = pt.ratio * pt.log_ratio_stderr;
    series.points.push_back(pt);
  }
  for (std::size_t k = 0; k + 1 < ncp; ++k) {
    const std::size_t a = 2 * k;
    const std::size_t b = 2 * (k + 1);
    series.increment_stderr.push_back(combo_stderr({{b, ip / mean[b]},
                                                    {b + 1, -iq / mean[b + 1]},
                                                    {a, -ip / mean[a]},
                                                    {a + 1, iq / mean[a + 1]}}));
  }
  const bool capped = out.capped;
  series.final_p = summarize(out.logs, stride, 2 * (ncp - 1), N);
  series.final_q = summarize(out.logs, stride, 2 * (ncp - 1) + 1, N);
  for (MomentEstimate* m : {&series.final_p, &series.final_q}) {
    m->seed = base.seed;
    m->bias = bias_of(base, capped);
  }
  return series;
}

}  // namespace hyperpam
