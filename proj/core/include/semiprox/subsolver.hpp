#pragma once

#include <vector>

#include "semiprox/objective.hpp"

namespace semiprox {

struct SubsolverConfig {
  double energy_tol = 1e-12;      ///< objective decrease per cycle, relative to 1 + |J|
  double correction_tol = 1e-10;  ///< X-norm of the last cycle's correction
  int max_cycles = 200;
  double line_search_shrink = 0.5;

  void validate() const;
};

/// Scaled dual proximal problem
///   P(phi) = argmin_y g(y) + 1/2 H(y,y) - phi(y),
/// with H already containing any omega M damping. Non-owning view; the
/// referenced objects must outlive the solve.
struct ProxSubproblem {
  const SecondOrderForm& op;
  DualVector rhs;
  const NonsmoothPart& g;
  const hilbert::InnerProduct& ip;
};

struct ProxResult {
  PrimalVector y;
  int cycles = 0;
  /// Objective after each cycle, starting with the value at the initial guess.
  std::vector<double> objective_trace;
  double last_correction = 0.0;
};

/// Subproblem objective g(y) + 1/2 H(y,y) - phi(y).
double prox_objective(const ProxSubproblem& sp, const PrimalVector& y);

/// Largest violation of phi - H y in dg(y), coordinatewise, for the separable
/// kernel (with the quadratic part of g folded into H).
double first_order_residual(const ProxSubproblem& sp, const PrimalVector& y);

/// Truncated nonsmooth Newton iteration: nonsmooth Gauss-Seidel sweep,
/// truncation of coordinates sitting at the kink, direct solve on the free
/// set, backtracking on the full objective. Throws SubproblemError.
ProxResult solve_scaled_prox(const ProxSubproblem& sp, const PrimalVector& start,
                             const SubsolverConfig& cfg = {});

/// solve_scaled_prox started from zero, returning only the minimizer.
PrimalVector scaled_prox(const ProxSubproblem& sp, const SubsolverConfig& cfg = {});

/// Plain cyclic coordinate descent to a per-sweep decrease <= tight_tol.
/// Slow; intended as an oracle for n <= 5000.
PrimalVector scaled_prox_reference(const ProxSubproblem& sp, double tight_tol = 1e-14);

}  // namespace semiprox
