#pragma once

#include "hyperpam/kernels.hpp"
#include "hyperpam/profile.hpp"
#include "hyperpam/quadrature.hpp"

namespace hyperpam {

/// Noise covariance  int int f(x) g(y) G_{2 alpha}(x, y) dx dy  for profiles
/// radial about the same point, using the exact n = 3 kernel.
///
/// The angular integral is done in closed form through A(s) = int_0^s G sinh,
/// leaving a 2-D radial integral. f and g must have bounded support (ball,
/// hat or a table ending in 0). Throws ModeError for n != 3.
double covariance_form(const RadialProfile& f, const RadialProfile& g, const NoiseSpec& spec,
                       const QuadratureSpec& quad = {});

}  // namespace hyperpam
