#include "semiprox/proxnewton.hpp"

#include <cmath>
#include <limits>

#include "damped_iteration.hpp"

namespace semiprox {
namespace {

struct Verdict {
  StepDecision decision = StepDecision::reject;
  bool positive_model = false;
};

Verdict judge(double step_norm, double lambda, double actual_change, bool finite,
              const SolverConfig& cfg) {
  if (step_norm == 0.0 && lambda == 0.0) return {StepDecision::accept, false};
  if (!finite) return {};
  if (lambda > 0.0) return {StepDecision::reject, true};
  const bool bounded = step_norm * step_norm <= -cfg.mbar * lambda;
  const bool decrease = actual_change <= cfg.gamma * lambda;
  return {bounded && decrease ? StepDecision::accept : StepDecision::reject, false};
}

double residual_norm(const CompositeProblem& p, const LocalModel& model, const DualVector& grad_plus,
                     const PrimalVector& dx, double omega) {
  DualVector r = grad_plus - model.gradient - model.hessian.apply(dx);
  if (omega != 0.0) r -= omega * hilbert::riesz(dx, *p.ip);
  return hilbert::norm_dual(r, *p.ip);
}

LocalModel make_model(const CompositeProblem& p, const PrimalVector& x, bool second_order) {
  if (second_order) return linearize(p, x);
  LocalModel m;
  m.x = x;
  m.f_value = eval_f(p, x);
  m.gradient = p.smooth->gradient(x);
  m.hessian = SecondOrderForm::zero(p.size());
  return m;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(lambda_tol >= 0.0)) throw ConfigError("lambda_tol must be non-negative");
  if (!(omega0 > 0.0)) throw ConfigError("omega0 must be positive");
  if (!(omega_init >= 0.0)) throw ConfigError("omega_init must be non-negative");
  if (!(increase_factor > 1.0)) throw ConfigError("increase_factor must exceed 1");
  if (!(mbar > 0.0)) throw ConfigError("mbar must be positive");
  if (max_outer <= 0) throw ConfigError("max_outer must be positive");
  if (!(omega_max > omega0)) throw ConfigError("omega_max must exceed omega0");
  inner.validate();
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged_step_norm: return "converged_step_norm";
    case SolveStatus::converged_lambda: return "converged_lambda";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::subproblem_failure: return "subproblem_failure";
  }
  return "unknown";
}

int SolveResult::accepted_count() const {
  int n = 0;
  for (const IterationRecord& r : history) n += r.accepted ? 1 : 0;
  return n;
}

double SolveResult::final_F() const {
  for (auto it = history.rbegin(); it != history.rend(); ++it)
    if (it->accepted) return it->F_value;
  return initial_F;
}

PrimalVector trial_step(const CompositeProblem& p, const LocalModel& model, double omega,
                        const SubsolverConfig& inner) {
  const SecondOrderForm damped = model.hessian.plus(omega, p.ip->matrix());
  const DualVector rhs = damped.apply(model.x) - model.gradient;
  const ProxSubproblem sp{damped, rhs, p.nonsmooth, *p.ip};
  return solve_scaled_prox(sp, model.x, inner).y - model.x;
}

PrimalVector trial_step(const CompositeProblem& p, const PrimalVector& x, double omega,
                        const SubsolverConfig& inner) {
  return trial_step(p, linearize(p, x), omega, inner);
}

StepDecision accept_test(const CompositeProblem& p, const LocalModel& model, const PrimalVector& dx,
                         double omega, const SolverConfig& cfg) {
  const double lambda = eval_lambda(p, model, dx, omega);
  double change = 0.0;
  bool finite = true;
  try {
    change = eval_F_difference(p, model.x, dx);
  } catch (const EvaluationError&) {
    finite = false;
  }
  return judge(hilbert::norm_primal(dx, *p.ip), lambda, change, finite, cfg).decision;
}

StepDecision accept_test(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx,
                         double omega, const SolverConfig& cfg) {
  return accept_test(p, linearize(p, x), dx, omega, cfg);
}

double omega_update(double omega, bool accepted, int consecutive_accepts, const SolverConfig& cfg) {
  if (!accepted) return omega > 0.0 ? omega * cfg.increase_factor : cfg.omega0;
  if (omega == 0.0) return 0.0;
  const double reduced = std::ldexp(omega, -std::max(consecutive_accepts, 1));
  return reduced < cfg.omega0 ? 0.0 : reduced;
}

double stationarity_residual(const CompositeProblem& p, const LocalModel& model,
                             const PrimalVector& x_plus, double omega) {
  const PrimalVector dx = x_plus - model.x;
  return residual_norm(p, model, p.smooth->gradient(x_plus), dx, omega);
}

double stationarity_residual(const CompositeProblem& p, const PrimalVector& x,
                             const PrimalVector& x_plus, double omega) {
  return stationarity_residual(p, linearize(p, x), x_plus, omega);
}

SolveResult solve(const CompositeProblem& p, const PrimalVector& x0, const SolverConfig& cfg) {
  return detail::run_damped_iteration(p, x0, cfg, {.second_order = true, .lambda_stop = true});
}

namespace detail {

SolveResult run_damped_iteration(const CompositeProblem& p, const PrimalVector& x0,
                                 const SolverConfig& cfg, DampedIterationMode mode) {
  cfg.validate();
  p.validate();
  if (x0.size() != p.size()) throw SizeMismatch("initial iterate of wrong size");

  SolveResult result;
  PrimalVector x = x0;
  LocalModel model = make_model(p, x, mode.second_order);
  result.initial_F = model.f_value + eval_g(p, x);

  double omega = cfg.omega_init;
  int consecutive = 0;
  int accepted = 0;
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  while (true) {
    if (accepted >= cfg.max_outer) {
      result.status = SolveStatus::max_iter;
      break;
    }

    PrimalVector dx;
    try {
      dx = trial_step(p, model, omega, cfg.inner);
    } catch (const SubproblemError&) {
      consecutive = 0;
      omega = omega_update(omega, false, 0, cfg);
      if (omega > cfg.omega_max) {
        result.status = SolveStatus::subproblem_failure;
        break;
      }
      continue;
    }

    IterationRecord rec;
    rec.k = accepted;
    rec.omega = omega;
    rec.step_norm_X = hilbert::norm_primal(dx, *p.ip);
    rec.lambda_value = eval_lambda(p, model, dx, omega);

    const PrimalVector x_plus = x + dx;
    double change = 0.0;
    bool finite = true;
    try {
      change = eval_F_difference(p, x, dx);
      rec.F_value = eval_F(p, x_plus);
    } catch (const EvaluationError&) {
      finite = false;
      rec.F_value = std::numeric_limits<double>::infinity();
    }

    const Verdict verdict = judge(rec.step_norm_X, rec.lambda_value, change, finite, cfg);
    rec.accepted = verdict.decision == StepDecision::accept;
    if (verdict.positive_model) ++result.positive_model_rejections;

    if (rec.accepted) {
      LocalModel next = make_model(p, x_plus, mode.second_order);
      rec.stationarity_residual = residual_norm(p, model, next.gradient, dx, omega);
      ++accepted;
      ++consecutive;
      x = x_plus;
      model = std::move(next);
    } else {
      consecutive = 0;
      rec.stationarity_residual =
          finite ? residual_norm(p, model, p.smooth->gradient(x_plus), dx, omega) : kNaN;
    }
    rec.consecutive_accepts = consecutive;
    result.history.push_back(rec);

    if ((1.0 + omega) * rec.step_norm_X < cfg.epsilon) {
      result.status = SolveStatus::converged_step_norm;
      break;
    }
    if (rec.accepted && mode.lambda_stop && std::abs(rec.lambda_value) < cfg.lambda_tol) {
      result.status = SolveStatus::converged_lambda;
      break;
    }

    omega = omega_update(omega, rec.accepted, consecutive, cfg);
    if (omega > cfg.omega_max) {
      result.status = SolveStatus::subproblem_failure;
      break;
    }
  }

  result.x_final = std::move(x);
  return result;
}

}  // namespace detail
}  // namespace semiprox
