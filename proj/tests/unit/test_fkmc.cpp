#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "hyperpam/errors.hpp"
#include "hyperpam/export.hpp"
#include "hyperpam/feynman_kac.hpp"
#include "hyperpam/semigroup.hpp"

using namespace hyperpam;

namespace {

FkConfig small_config() {
  FkConfig c;
  c.spec = {1.0, 0.5, 3, 1.0};
  c.p = 2;
  c.t_end = 0.3;
  c.dt = 0.01;
  c.n_paths = 1500;
  c.seed = 21;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = small_config();
  c.p = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.spec.alpha = 0.25;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.spec.n = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.kernel_mode = KernelChoice::Lower;
  CHECK_NOTHROW(c.validate());
  c = small_config();
  c.u0.epsilon = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(initial_kind_from_string("BUMP") == InitialCondition::Kind::Bump);
  CHECK(kernel_choice_from_string(to_string(KernelChoice::Lower)) == KernelChoice::Lower);
}

TEST_CASE("beta = 0") {
  auto c = small_config();
  c.spec.beta = 0.0;
  const auto flat = moment_estimate(c);
  CHECK(flat.mean == 1.0);
  CHECK(flat.std_error == 0.0);

  c.u0 = InitialCondition::bump(2.0, 1.0);
  c.t_end = 0.5;
  c.n_paths = 6000;
  c.p = 3;
  const auto est = moment_estimate(c);
  const auto o = ModelPoint::basepoint(3, 1.0);
  const double pt = heat_semigroup_apply(0.5, c.u0.profile(), o, SemigroupMethod::Quadrature).value;
  CHECK(std::abs(est.mean - std::pow(pt, 3)) <= 3.0 * est.std_error);
}

TEST_CASE("determinism and worker invariance") {
  auto c = small_config();
  const auto a = moment_estimate(c);
  const auto b = moment_estimate(c);
  CHECK(a.same_numbers(b));
  for (unsigned w : {2u, 3u, 8u}) {
    c.workers = w;
    CHECK(moment_estimate(c).same_numbers(a));
  }
  c.seed = 22;
  CHECK_FALSE(moment_estimate(c).same_numbers(a));
}

TEST_CASE("positivity floor and Jensen ordering") {
  auto c = small_config();
  c.u0 = InitialCondition::constant(0.5);
  c.p = 3;
  const auto e3 = moment_estimate(c);
  CHECK(e3.mean >= std::pow(0.5, 3) - 3.0 * e3.std_error);
  const auto series = intermittency_ratio(3, 2, {0.1, 0.2, 0.3}, c);
  for (const auto& pt : series.points) CHECK(pt.ratio >= 1.0 - 3.0 * pt.stderr);
}

TEST_CASE("bias accounting") {
  auto c = small_config();
  CHECK(moment_estimate(c).bias == Bias::Unbiased);
  c.delta_floor = 0.05;  // bounded kernel: the floor never bites
  CHECK(moment_estimate(c).bias == Bias::Unbiased);
  c.spec.alpha = 0.6;    // order 1.2 < n/2: capped below the floor
  CHECK(moment_estimate(c).bias == Bias::Lower);

  c = small_config();
  c.spec.beta = 2.0;
  const auto exact = moment_estimate(c);
  c.kernel_mode = KernelChoice::Lower;
  c.lower_constant = 0.04;
  const auto lower = moment_estimate(c);
  CHECK(lower.bias == Bias::Lower);
  CHECK(exact.mean >= lower.mean - 3.0 * std::hypot(exact.std_error, lower.std_error));
}

TEST_CASE("first chaos coefficient") {
  const NoiseSpec spec{1.0, 1.0, 3, 1.0};
  const auto short_t = chaos_k1_estimate(spec, 1e-3, 1e-3, 500, 3);
  CHECK(short_t.mean < 1e-3);
  const auto t1 = chaos_k1_estimate(spec, 0.25, 0.01, 3000, 3);
  const auto t2 = chaos_k1_estimate(spec, 0.5, 0.01, 3000, 3);
  CHECK(t2.mean >= t1.mean);

  auto c = small_config();
  c.spec.beta = 0.05;
  c.t_end = 0.5;
  c.n_paths = 6000;
  const auto m = moment_estimate(c);
  const auto k1 = chaos_k1_estimate(c.spec, c.t_end, c.dt, c.n_paths, c.seed + 1);
  const double b2 = c.spec.beta * c.spec.beta;
  CHECK(std::abs((m.mean - 1.0) / b2 - k1.mean) <= 3.0 * std::hypot(m.std_error / b2, k1.std_error));
}

TEST_CASE("intermittency trivial cases") {
  auto c = small_config();
  c.spec.beta = 0.0;
  for (const auto& pt : intermittency_ratio(4, 2, {0.1, 0.2}, c).points) CHECK(pt.ratio == 1.0);
  c.spec.beta = 1.0;
  for (const auto& pt : intermittency_ratio(3, 3, {0.1, 0.2}, c).points) CHECK(pt.ratio == 1.0);
  CHECK_THROWS_AS(intermittency_ratio(2, 3, {0.1}, c), ConfigError);
  CHECK_THROWS_AS(intermittency_ratio(3, 2, {0.2, 0.1}, c), ConfigError);
}

TEST_CASE("time-step check") {
  auto c = small_config();
  c.n_paths = 4000;
  const auto conv = check_dt_convergence(c);
  CHECK(conv.fine.n_paths == conv.coarse.n_paths);
  CHECK(conv.converged);
}

TEST_CASE("JSON-lines record") {
  auto c = small_config();
  const auto est = moment_estimate(c);
  std::ostringstream os;
  write_moment_jsonl(os, "moment", c, est);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["estimator"] == "moment");
  CHECK(j["mean"].get<double>() == est.mean);
  CHECK(j["config"]["noise.beta"].get<double>() == 0.5);
  CHECK(j["bias"] == "UNBIASED");
  CHECK(j.contains("wall_seconds"));
  MomentEstimate inf = est;
  inf.mean = INFINITY;
  CHECK(nlohmann::json::parse(moment_record_json("moment", c, inf))["mean"].is_null());
}
