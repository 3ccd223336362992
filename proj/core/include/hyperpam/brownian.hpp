#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "hyperpam/geometry.hpp"
#include "hyperpam/rng.hpp"

namespace hyperpam {

/// In-place geodesic random walk whose generator is the Laplace-Beltrami
/// operator (not Delta/2): each step draws xi ~ N(0, 2 dt I_n) in the tangent
/// space at the basepoint, boosts it to T_x and follows the geodesic.
class GeodesicWalker {
 public:
  GeodesicWalker(int n, double K);

  void step(std::span<double> x, double dt, Rng& rng);
  /// Drop the cached normal deviate; call when switching to a new RNG stream.
  void reset() { normal_.reset(); }

  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] double curvature() const { return K_; }

 private:
  int n_;
  double K_;
  std::vector<double> xi_;
  std::vector<double> v_;
  std::normal_distribution<double> normal_;
};

struct BrownianPath {
  std::vector<double> times;
  std::vector<ModelPoint> points;
  std::uint64_t seed = 0;
};

/// Number of steps used to reach t_end with nominal step dt (the last step
/// absorbs the remainder, so it may be shorter than dt).
std::size_t step_count(double t_end, double dt);

/// Sample one path from x0 on [0, t_end]; deterministic given (seed, dt, t_end).
BrownianPath brownian_path(const ModelPoint& x0, double t_end, double dt, std::uint64_t seed);

/// CSV with header `step,time,coord_0..coord_n`.
void write_path_csv(std::ostream& os, const BrownianPath& path);

}  // namespace hyperpam
