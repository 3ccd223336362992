#pragma once

#include <cstdint>

#include "hyperpam/geometry.hpp"
#include "hyperpam/profile.hpp"
#include "hyperpam/quadrature.hpp"

namespace hyperpam {

enum class SemigroupMethod { Quadrature, MonteCarlo };

struct SemigroupValue {
  double value = 0.0;
  double std_error = 0.0;  // 0 for quadrature
};

struct SemigroupMcOptions {
  double dt = 1e-3;
  std::size_t n_paths = 20000;
  std::uint64_t seed = 1;
};

/// Mean of the radial profile f (about a center point, in physical units)
/// over the geodesic sphere of tilde-radius rho_t around a point at
/// tilde-distance a_t from the center, where tilde lengths are sqrt(K) r.
double sphere_average(const RadialProfile& f, double a_t, double rho_t, double sqrt_K,
                      const QuadratureSpec& quad = {});

/// (P_t u0)(x) for u0 radial about `center`.
///
/// Quadrature works in geodesic polar coordinates around x and needs the
/// exact kernel (n = 3). Monte Carlo averages u0(B_t) over sampled paths.
SemigroupValue heat_semigroup_apply(double t, const RadialProfile& u0, const ModelPoint& center,
                                    const ModelPoint& x, SemigroupMethod method,
                                    const QuadratureSpec& quad = {},
                                    const SemigroupMcOptions& mc = {});

/// Convenience overload: profile centered at x itself.
SemigroupValue heat_semigroup_apply(double t, const RadialProfile& u0, const ModelPoint& x,
                                    SemigroupMethod method, const QuadratureSpec& quad = {},
                                    const SemigroupMcOptions& mc = {});

}  // namespace hyperpam
