#pragma once

#include "hyperpam/quadrature.hpp"

namespace hyperpam {

/// Tolerances used by the special functions when the caller does not pass any.
QuadratureSpec special_function_quadrature();

/// Lower incomplete gamma  gamma(s, x) = int_0^x t^(s-1) e^(-t) dt,  s > 0, x >= 0.
double gamma_lower(double s, double x, const QuadratureSpec& quad = special_function_quadrature());

/// Upper incomplete gamma  Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt,  s >= 0, x > 0.
/// s == 0 is routed to neg_ei(x).
double gamma_upper(double s, double x, const QuadratureSpec& quad = special_function_quadrature());

/// -Ei(-x) = int_x^inf e^(-t) / t dt for x > 0 (the exponential integral E1).
double neg_ei(double x, const QuadratureSpec& quad = special_function_quadrature());

/// log of the two-sided heat-kernel comparison profile
///   h(t, z) = t^(-n/2) (1+t+z)^((n-3)/2) (1+z) exp(-z^2/4t - (n-1)^2 t/4 - (n-1) z/2).
double log_dm_h(double t, double z, int n);

/// exp(log_dm_h); underflows to 0 rather than producing NaN.
double dm_h(double t, double z, int n);

/// log(r / sinh r), accurate for tiny and huge r.
double log_r_over_sinh(double r);

}  // namespace hyperpam
