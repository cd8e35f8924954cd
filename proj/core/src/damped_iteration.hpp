#pragma once

#include "semiprox/proxnewton.hpp"

namespace semiprox::detail {

struct DampedIterationMode {
  bool second_order = true;  ///< false drops H_x from the model (proximal gradient)
  bool lambda_stop = true;   ///< stop on |lambda| < lambda_tol for admissible steps
};

/// Shared accept/reject loop behind the Proximal Newton solver and the
/// proximal gradient baseline.
SolveResult run_damped_iteration(const CompositeProblem& p, const PrimalVector& x0,
                                 const SolverConfig& cfg, DampedIterationMode mode);

}  // namespace semiprox::detail
