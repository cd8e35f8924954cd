#pragma once

#include <string>
#include <vector>

#include "semiprox/objective.hpp"
#include "semiprox/subsolver.hpp"

namespace semiprox {

struct SolverConfig {
  double gamma = 0.5;            ///< sufficient decrease fraction, in (0,1)
  double epsilon = 1e-8;         ///< (1+omega)||dx||_X stopping threshold
  double lambda_tol = 1e-14;     ///< |lambda| threshold for an admissible step
  double omega0 = 1e-3;          ///< snap-to-zero threshold and restart value
  double omega_init = 1.0;
  double increase_factor = 2.0;  ///< omega growth on rejection
  double mbar = 1e6;             ///< ||dx||^2 <= -mbar * lambda
  int max_outer = 500;           ///< accepted steps
  double omega_max = 1e12;       ///< beyond this the run is a subproblem failure
  SubsolverConfig inner;

  void validate() const;
};

struct IterationRecord {
  int k = 0;  ///< index of the iterate the trial step starts from
  double omega = 0.0;
  double step_norm_X = 0.0;
  double lambda_value = 0.0;
  double F_value = 0.0;  ///< F at the trial point x + dx
  bool accepted = false;
  int consecutive_accepts = 0;
  double stationarity_residual = 0.0;
};

enum class SolveStatus { converged_step_norm, converged_lambda, max_iter, subproblem_failure };

std::string to_string(SolveStatus status);

struct SolveResult {
  PrimalVector x_final;
  SolveStatus status = SolveStatus::max_iter;
  std::vector<IterationRecord> history;
  double initial_F = 0.0;
  /// Trial steps rejected because lambda came out positive for a nonzero
  /// step, which an exact subproblem solution never produces.
  int positive_model_rejections = 0;

  int accepted_count() const;
  int trial_count() const { return static_cast<int>(history.size()); }
  bool converged() const {
    return status == SolveStatus::converged_step_norm || status == SolveStatus::converged_lambda;
  }
  double final_F() const;
};

/// Damped step dx(omega) = P_g^{H+omega M}((H + omega M) x - f'(x)) - x.
/// The subproblem is warm-started at x. SubproblemError propagates.
PrimalVector trial_step(const CompositeProblem& p, const LocalModel& model, double omega,
                        const SubsolverConfig& inner = {});
PrimalVector trial_step(const CompositeProblem& p, const PrimalVector& x, double omega,
                        const SubsolverConfig& inner = {});

enum class StepDecision { accept, reject };

/// Step bound ||dx||^2 <= -mbar lambda together with sufficient decrease
/// F(x+dx) <= F(x) + gamma lambda. A zero step with zero model value passes.
StepDecision accept_test(const CompositeProblem& p, const LocalModel& model, const PrimalVector& dx,
                         double omega, const SolverConfig& cfg);
StepDecision accept_test(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx,
                         double omega, const SolverConfig& cfg);

/// Damping schedule: double on rejection (restart at omega0 if the rejected
/// step was undamped); after n consecutive accepts multiply by 2^-n and snap
/// to zero below omega0. `consecutive_accepts` counts the current accept.
double omega_update(double omega, bool accepted, int consecutive_accepts, const SolverConfig& cfg);

/// ||f'(x+dx) - f'(x) - (H_x + omega M) dx||_{X*}, an upper bound for the
/// distance of 0 to the subdifferential of F at x_plus.
double stationarity_residual(const CompositeProblem& p, const LocalModel& model,
                             const PrimalVector& x_plus, double omega);
double stationarity_residual(const CompositeProblem& p, const PrimalVector& x,
                             const PrimalVector& x_plus, double omega);

/// Globalized second-order semi-smooth Proximal Newton method.
SolveResult solve(const CompositeProblem& p, const PrimalVector& x0, const SolverConfig& cfg = {});

}  // namespace semiprox
