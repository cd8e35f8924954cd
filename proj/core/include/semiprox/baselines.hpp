#pragma once

#include "semiprox/proxnewton.hpp"

namespace semiprox {

struct FirstOrderConfig {
  double initial_step_scale = 1.0;  ///< omega_init (proximal gradient) or L_0 (FISTA)
  double backtracking_shrink = 0.5; ///< step shrink on failure; omega / L grow by its inverse
  int max_iter = 1'000'000;
  double stop_step_norm = 1e-8;     ///< epsilon of the scaled step-norm criterion
  double gamma = 0.5;
  double omega0 = 1e-3;
  double mbar = 1e6;
  double max_scale = 1e12;
  SubsolverConfig inner;

  void validate() const;
};

/// Proximal gradient in the metric of X: the damped step with H_x dropped,
/// driven by the same acceptance test and omega schedule as Proximal Newton.
SolveResult prox_gradient_solve(const CompositeProblem& p, const PrimalVector& x0,
                                const FirstOrderConfig& cfg = {});

/// Momentum parameter update t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2.
double fista_next_t(double t);

/// FISTA with backtracking on L (doubling until the quadratic upper bound
/// holds) and proximal steps in the X metric. No restarts. Every backtracking
/// trial is logged; rows with accepted = true are the FISTA iterates, with
/// omega holding L_k. Throws ConfigError if g is not convex.
SolveResult fista_solve(const CompositeProblem& p, const PrimalVector& x0,
                        const FirstOrderConfig& cfg = {});

}  // namespace semiprox
