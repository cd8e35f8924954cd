#include "semiprox/baselines.hpp"

#include <cmath>

#include "damped_iteration.hpp"

namespace semiprox {

void FirstOrderConfig::validate() const {
  if (!(initial_step_scale > 0.0)) throw ConfigError("initial step scale must be positive");
  if (!(backtracking_shrink > 0.0 && backtracking_shrink < 1.0))
    throw ConfigError("backtracking shrink must lie in (0, 1)");
  if (max_iter <= 0) throw ConfigError("max_iter must be positive");
  if (!(stop_step_norm > 0.0)) throw ConfigError("stop_step_norm must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  inner.validate();
}

SolveResult prox_gradient_solve(const CompositeProblem& p, const PrimalVector& x0,
                                const FirstOrderConfig& cfg) {
  cfg.validate();
  SolverConfig sc;
  sc.gamma = cfg.gamma;
  sc.epsilon = cfg.stop_step_norm;
  sc.omega0 = cfg.omega0;
  sc.omega_init = cfg.initial_step_scale;
  sc.increase_factor = 1.0 / cfg.backtracking_shrink;
  sc.mbar = cfg.mbar;
  sc.max_outer = cfg.max_iter;
  sc.omega_max = cfg.max_scale;
  sc.inner = cfg.inner;
  return detail::run_damped_iteration(p, x0, sc, {.second_order = false, .lambda_stop = false});
}

double fista_next_t(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

SolveResult fista_solve(const CompositeProblem& p, const PrimalVector& x0,
                        const FirstOrderConfig& cfg) {
  cfg.validate();
  p.validate();
  if (!p.nonsmooth.is_convex()) {
    throw ConfigError("FISTA requires a convex nonsmooth part (kappa2 >= 0)");
  }
  if (x0.size() != p.size()) throw SizeMismatch("initial iterate of wrong size");

  const hilbert::InnerProduct& ip = *p.ip;
  SolveResult result;
  result.initial_F = eval_F(p, x0);
  result.status = SolveStatus::max_iter;

  PrimalVector x_prev = x0;
  PrimalVector y = x0;
  double t = 1.0;
  double lipschitz = cfg.initial_step_scale;
  int accepted = 0;

  while (accepted < cfg.max_iter) {
    const DualVector grad_y = p.smooth->gradient(y);
    PrimalVector x_next;
    PrimalVector step;
    IterationRecord rec;
    bool failed = false;

    while (true) {
      const SecondOrderForm metric(SparseMatrix(lipschitz * ip.matrix()));
      const DualVector rhs = metric.apply(y) - grad_y;
      const ProxSubproblem sp{metric, rhs, p.nonsmooth, ip};
      try {
        x_next = solve_scaled_prox(sp, y, cfg.inner).y;
      } catch (const SubproblemError&) {
        lipschitz /= cfg.backtracking_shrink;
        if (lipschitz > cfg.max_scale) {
          failed = true;
          break;
        }
        continue;
      }
      step = x_next - y;
      const double step_sq = hilbert::inner(step, step, ip);
      const double linear = apply(grad_y, step);

      rec = IterationRecord{};
      rec.k = accepted;
      rec.omega = lipschitz;
      rec.step_norm_X = std::sqrt(step_sq);
      rec.lambda_value = linear + 0.5 * lipschitz * step_sq + p.nonsmooth.difference(y, step, ip);
      rec.F_value = eval_F(p, x_next);
      rec.accepted = p.smooth->difference(y, step) <= linear + 0.5 * lipschitz * step_sq;
      if (rec.accepted) break;

      rec.consecutive_accepts = 0;
      rec.stationarity_residual = std::nan("");
      result.history.push_back(rec);
      lipschitz /= cfg.backtracking_shrink;
      if (lipschitz > cfg.max_scale) {
        failed = true;
        break;
      }
    }
    if (failed) {
      result.status = SolveStatus::subproblem_failure;
      break;
    }

    ++accepted;
    DualVector r = p.smooth->gradient(x_next) - grad_y - lipschitz * hilbert::riesz(step, ip);
    rec.stationarity_residual = hilbert::norm_dual(r, ip);
    rec.consecutive_accepts = accepted;
    result.history.push_back(rec);

    const double t_next = fista_next_t(t);
    y = x_next + ((t - 1.0) / t_next) * (x_next - x_prev);
    x_prev = x_next;
    t = t_next;

    if ((1.0 + lipschitz) * rec.step_norm_X < cfg.stop_step_norm) {
      result.status = SolveStatus::converged_step_norm;
      break;
    }
  }

  result.x_final = std::move(x_prev);
  return result;
}

}  // namespace semiprox
