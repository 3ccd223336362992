#include "hyperpam/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "hyperpam/errors.hpp"

namespace hyperpam {

GeodesicWalker::GeodesicWalker(int n, double K)
    : n_(n), K_(K), xi_(static_cast<std::size_t>(n)), v_(static_cast<std::size_t>(n) + 1) {
  if (n < 2) throw DomainError("GeodesicWalker: dimension must be >= 2");
  if (!(K > 0.0)) throw DomainError("GeodesicWalker: K must be > 0");
}

void GeodesicWalker::step(std::span<double> x, double dt, Rng& rng) {
  const double sigma = std::sqrt(2.0 * dt);
  double len2 = 0.0;
  for (auto& e : xi_) {
    e = sigma * normal_(rng);
    len2 += e * e;
  }
  transport_from_basepoint(x, K_, xi_, v_);
  const double theta = std::sqrt(K_ * len2);
  const double c = std::cosh(theta);
  const double s = theta > 1e-12 ? std::sinh(theta) / theta : 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = c * x[i] + s * v_[i];
  renormalize(x, K_);
}

std::size_t step_count(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw DomainError("step_count: t_end and dt must be > 0");
  if (dt > t_end * (1.0 + 1e-12)) throw DomainError("step_count: dt must not exceed t_end");
  const double ratio = t_end / dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  return std::max<std::size_t>(steps, 1);
}

BrownianPath brownian_path(const ModelPoint& x0, double t_end, double dt, std::uint64_t seed) {
  const std::size_t steps = step_count(t_end, dt);
  BrownianPath path;
  path.seed = seed;
  path.times.reserve(steps + 1);
  path.points.reserve(steps + 1);
  path.times.push_back(0.0);
  path.points.push_back(x0);
  Rng rng(seed);
  GeodesicWalker walker(x0.dim(), x0.curvature());
  ModelPoint current = x0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = path.times.back();
    const double t_next = (k == steps) ? t_end : static_cast<double>(k) * dt;
    walker.step(current.mutable_coords(), t_next - t_prev, rng);
    path.times.push_back(t_next);
    path.points.push_back(current);
  }
  return path;
}

void write_path_csv(std::ostream& os, const BrownianPath& path) {
  if (path.points.empty()) return;
  const int n = path.points.front().dim();
  os << "step,time";
  for (int i = 0; i <= n; ++i) os << ",coord_" << i;
  os << '\n';
  os << std::setprecision(17);
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    os << k << ',' << path.times[k];
    for (double c : path.points[k].coords()) os << ',' << c;
    os << '\n';
  }
}

}  // namespace hyperpam
