#include "hyperpam/export.hpp"

#include <cmath>
#include <json.hpp>
#include <ostream>

namespace hyperpam {

namespace {

// JSON has no infinities; non-finite numbers become null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string moment_record_json(std::string_view estimator, const FkConfig& cfg, const MomentEstimate& est) {
  nlohmann::ordered_json j;
  j["estimator"] = estimator;
  j["config"] = {
      {"model.n", cfg.spec.n},
      {"model.K", cfg.spec.K},
      {"noise.alpha", cfg.spec.alpha},
      {"noise.beta", cfg.spec.beta},
      {"moment.p", cfg.p},
      {"mc.t_end", cfg.t_end},
      {"mc.dt", cfg.dt},
      {"mc.n_paths", cfg.n_paths},
      {"mc.seed", cfg.seed},
      {"mc.workers", cfg.workers},
      {"u0.kind", to_string(cfg.u0.kind)},
      {"u0.epsilon", cfg.u0.epsilon},
      {"u0.R", cfg.u0.R},
      {"kernel.mode", to_string(cfg.kernel_mode)},
      {"kernel.delta_floor", cfg.delta_floor},
      {"kernel.lower_constant", cfg.lower_constant},
  };
  j["mean"] = number(est.mean);
  j["stderr"] = number(est.std_error);
  j["log_mean"] = number(est.log_mean);
  j["log_stderr"] = number(est.log_std_error);
  j["bias"] = to_string(est.bias);
  j["n_paths"] = est.n_paths;
  j["seed"] = est.seed;
  j["wall_seconds"] = est.wall_seconds;
  return j.dump();
}

void write_moment_jsonl(std::ostream& os, std::string_view estimator, const FkConfig& cfg,
                        const MomentEstimate& est) {
  os << moment_record_json(estimator, cfg, est) << '\n';
}

void write_intermittency_csv(std::ostream& os, const IntermittencySeries& series) {
  os << "t,ratio,stderr,log_ratio,log_ratio_stderr,p,q\n";
  os.precision(17);
  for (const auto& pt : series.points) {
    os << pt.t << ',' << pt.ratio << ',' << pt.stderr << ',' << pt.log_ratio << ',' << pt.log_ratio_stderr
       << ',' << series.p << ',' << series.q << '\n';
  }
}

}  // namespace hyperpam
