#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "hyperpam/brownian.hpp"
#include "hyperpam/errors.hpp"
#include "hyperpam/geometry.hpp"
#include "hyperpam/rng.hpp"
#include "hyperpam/stats.hpp"

using namespace hyperpam;

namespace {

ModelPoint random_point(int n, double K, std::mt19937_64& rng, double spread = 2.0) {
  std::normal_distribution<double> nd(0.0, spread);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  double s = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    c[i] = nd(rng);
    s += c[i] * c[i];
  }
  c[0] = std::sqrt(1.0 / K + s);
  return ModelPoint(c, K);
}

// Tangent vector at x: project an ambient Gaussian onto x^perp (Lorentz).
std::vector<double> random_tangent(const ModelPoint& x, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(x.coords().size());
  for (auto& e : v) e = nd(rng);
  const double K = x.curvature();
  const double c = minkowski_dot(x.coords(), v) * K;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * x.coords()[i];
  return v;
}

double tangent_norm(std::span<const double> v) { return std::sqrt(-minkowski_dot(v, v)); }

// E[r_t] for dr = (n-1) sqrt(K) coth(sqrt(K) r) dt + sqrt(2) dW, reflected at 0.
double radial_euler_mean(int n, double K, double t_end, double dt, int paths, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const double sk = std::sqrt(K);
  const int steps = static_cast<int>(std::lround(t_end / dt));
  double sum = 0.0;
  for (int p = 0; p < paths; ++p) {
    // Start just off the pole with the exact small-time law of the radius.
    double r = std::sqrt(2.0 * dt) * std::sqrt(static_cast<double>(n));
    for (int k = 1; k < steps; ++k) {
      r += (n - 1) * sk / std::tanh(sk * r) * dt + std::sqrt(2.0 * dt) * nd(rng);
      r = std::abs(r);
    }
    sum += r;
  }
  return sum / paths;
}

}  // namespace

TEST_CASE("basepoint and axis points") {
  const auto o = ModelPoint::basepoint(3, 4.0);
  CHECK(o.coords()[0] == doctest::Approx(0.5));
  CHECK(distance(o, o) == 0.0);
  for (double r : {0.01, 1.0, 10.0}) CHECK(distance(o, ModelPoint::along_axis(3, 4.0, r)) == doctest::Approx(r).epsilon(1e-10));
  const ModelPoint y({std::cosh(1.0), std::sinh(1.0), 0.0}, 1.0);
  CHECK(distance(ModelPoint::basepoint(2, 1.0), y) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ModelPoint({1.0, 1.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(distance(o, ModelPoint::basepoint(2, 4.0)), MismatchError);
}

TEST_CASE("distance is a metric on sampled triples") {
  std::mt19937_64 rng(11);
  for (double K : {1.0, 0.3}) {
    for (int i = 0; i < 2000; ++i) {
      const auto a = random_point(3, K, rng), b = random_point(3, K, rng), c = random_point(3, K, rng);
      CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
      CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exp_map and log_map round trip") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 5}) {
    for (int i = 0; i < 200; ++i) {
      const auto x = random_point(n, 1.7, rng, 1.0);
      auto v = random_tangent(x, rng);
      const auto zero = std::vector<double>(v.size(), 0.0);
      CHECK(exp_map(x, zero) == x);
      for (double r : {0.01, 1.0, 10.0}) {
        const double s = r / tangent_norm(v);
        for (auto& e : v) e *= s;
        const auto y = exp_map(x, v);
        CHECK(y.norm_defect() <= 1e-9);
        CHECK(distance(x, y) == doctest::Approx(r).epsilon(1e-8));
        if (r < 5.0) {
          const auto w = log_map(x, y);
          for (std::size_t k = 0; k < v.size(); ++k) CHECK(w[k] == doctest::Approx(v[k]).epsilon(1e-7).scale(1.0));
        }
      }
    }
  }
  const auto o = ModelPoint::basepoint(3, 1.0);
  CHECK_THROWS_AS(exp_map(o, std::vector<double>{1.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("transport from the basepoint is an isometry into the tangent space") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    const auto x = random_point(4, 2.0, rng);
    std::vector<double> xi(4), out(5);
    double len = 0.0;
    for (auto& e : xi) {
      e = nd(rng);
      len += e * e;
    }
    transport_from_basepoint(x.coords(), 2.0, xi, out);
    CHECK(tangent_norm(out) == doctest::Approx(std::sqrt(len)).epsilon(1e-9));
    CHECK(std::abs(minkowski_dot(x.coords(), out)) < 1e-8 * (1.0 + x.coords()[0] * tangent_norm(out)));
  }
}

TEST_CASE("walker keeps the norm and is deterministic") {
  const auto o = ModelPoint::basepoint(3, 1.0);
  const auto a = brownian_path(o, 5.0, 0.01, 42);
  const auto b = brownian_path(o, 5.0, 0.01, 42);
  CHECK(a.points == b.points);
  CHECK(a.times.size() == 501);
  for (const auto& p : a.points) CHECK(p.norm_defect() <= 1e-9);
  const auto c = brownian_path(o, 1.0, 0.3, 1);
  CHECK(c.times.size() == 5);
  CHECK(c.times.back() == 1.0);
  CHECK(step_count(1.0, 1.0) == 1);
  CHECK_THROWS_AS(step_count(1.0, 2.0), DomainError);
  std::ostringstream csv;
  write_path_csv(csv, c);
  CHECK(csv.str().rfind("step,time,coord_0,coord_1,coord_2,coord_3\n", 0) == 0);
}

TEST_CASE("one step has E[d^2] = 2 n dt") {
  for (int n : {2, 3}) {
    const double dt = 1e-3;
    GeodesicWalker walker(n, 1.0);
    const auto o = ModelPoint::basepoint(n, 1.0);
    RunningStats d2;
    for (std::uint64_t i = 0; i < 20000; ++i) {
      Rng rng(stream_seed(7, i));
      auto x = o;
      walker.reset();
      walker.step(x.mutable_coords(), dt, rng);
      const double d = distance(o, x);
      d2.push(d * d);
    }
    CHECK(std::abs(d2.mean() - 2.0 * n * dt) <= 3.0 * d2.stderr_of_mean());
  }
}

TEST_CASE("radial speed agrees with the 1-D radial SDE") {
  const int n = 3;
  const double K = 1.0, t = 8.0, dt = 0.01;
  GeodesicWalker walker(n, K);
  const auto o = ModelPoint::basepoint(n, K);
  RunningStats dist;
  for (std::uint64_t i = 0; i < 400; ++i) {
    Rng rng(stream_seed(3, i));
    walker.reset();
    auto x = o;
    for (std::size_t k = 0; k < step_count(t, dt); ++k) walker.step(x.mutable_coords(), dt, rng);
    dist.push(distance(o, x));
  }
  const double oracle = radial_euler_mean(n, K, t, dt, 4000, 99);
  CHECK(std::abs(dist.mean() - oracle) <= 3.0 * dist.stderr_of_mean() + 0.01 * oracle);
  CHECK(dist.mean() / t == doctest::Approx((n - 1) * std::sqrt(K)).epsilon(0.1));
}
