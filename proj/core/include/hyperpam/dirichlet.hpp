#pragma once

#include <cstdint>
#include <vector>

#include "hyperpam/ledger.hpp"
#include "hyperpam/optimize.hpp"

namespace hyperpam {

/// Squared first positive zero of J_{n/2 - 1}: the flat unit-ball Dirichlet eigenvalue.
double flat_ball_eigenvalue(int n);

/// R-dependent part (n-1)^2 K / 4 + ((n-2)^2/4 + 1/4) (sqrt K / sinh(R sqrt K) - 1/R^2).
double dirichlet_constant_term(double R, int n, double K);

/// Upper bound c / R^2 + C(n, K, R) on the first Dirichlet eigenvalue of a
/// geodesic ball of radius R in H^n_K. c defaults to flat_ball_eigenvalue(n).
double dirichlet_eigenvalue_upper(double R, int n, double K, double c);
/// Same, with c taken from (and recorded in) the ledger.
double dirichlet_eigenvalue_upper(double R, int n, double K, ConstantLedger& ledger);

struct SurvivalCurve {
  std::vector<double> times;
  std::vector<double> fraction;  // share of paths that never left the ball up to times[i]
  std::size_t n_paths = 0;
};

/// Brownian paths started at the center of B(o, R), killed at the first grid
/// time they are found outside. Times are multiples of dt up to t_end.
SurvivalCurve ball_survival(double R, int n, double K, double t_end, double dt, std::size_t n_paths,
                            std::uint64_t seed);

/// Least-squares decay rate  -d ln S / dt  over [t_lo, t_hi].
LinearFit survival_decay_fit(const SurvivalCurve& curve, double t_lo, double t_hi);

}  // namespace hyperpam
