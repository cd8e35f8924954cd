#include "semiprox/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "semiprox/problems/quadratic_l1.hpp"
#include "semiprox/problems/soss.hpp"
#include "semiprox/proxnewton.hpp"
#include "semiprox/subsolver.hpp"

namespace semiprox::properties {
namespace {

using Rng = std::mt19937_64;

Eigen::VectorXd uniform_vector(Eigen::Index n, double scale, Rng& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

CheckResult make_result(std::string name, bool passed, double worst, const std::string& what) {
  std::ostringstream os;
  os << what << " = " << worst;
  return {std::move(name), passed, os.str()};
}

/// Smallest distance of |grad u| to 1 over all elements.
double kink_distance(const hilbert::Mesh& mesh, const Eigen::VectorXd& u) {
  double best = std::numeric_limits<double>::infinity();
  for (const hilbert::Triangle& t : mesh.elements()) {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (int a = 0; a < 3; ++a) {
      const int d = mesh.dof(t.nodes[a]);
      if (d >= 0) g += u[d] * t.basis_gradients[a];
    }
    best = std::min(best, std::abs(g.norm() - 1.0));
  }
  return best;
}

/// Random nodal values whose element gradients straddle the kink; resampled
/// until every element is at least `margin` away from it.
Eigen::VectorXd toy_sample(const hilbert::Mesh& mesh, double margin, Rng& rng) {
  const double scale = 2.0 * mesh.h();
  for (;;) {
    Eigen::VectorXd u = uniform_vector(mesh.num_dofs(), scale, rng);
    if (kink_distance(mesh, u) >= margin) return u;
  }
}

problems::QuadraticL1Options random_options(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> k(0.1, 1.0);
  problems::QuadraticL1Options o;
  o.n = n;
  o.seed = rng();
  o.kappa1 = k(rng);
  o.kappa2 = k(rng);
  return o;
}

}  // namespace

CheckResult riesz_isometry(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const hilbert::Mesh mesh(3);
  const hilbert::InnerProduct ip = hilbert::assemble_inner_product(mesh);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const PrimalVector v(uniform_vector(ip.size(), 1.0, rng));
    const double nv = hilbert::norm_primal(v, ip);
    worst = std::max(worst, std::abs(hilbert::norm_dual(hilbert::riesz(v, ip), ip) - nv) / nv);
  }
  return make_result("riesz_isometry", worst <= 1e-9, worst, "max relative gap");
}

CheckResult metric_spd() {
  for (int level = 1; level <= 5; ++level) {
    try {
      hilbert::assemble_inner_product(hilbert::Mesh(level));
    } catch (const InvalidMesh& e) {
      return {"metric_spd", false, "level " + std::to_string(level) + ": " + e.what()};
    }
  }
  return {"metric_spd", true, "levels 1..5 factorize"};
}

CheckResult toy_gradient(const problems::ToyProblemParams& params, std::uint64_t seed,
                         int samples) {
  Rng rng(seed);
  auto mesh = std::make_shared<const hilbert::Mesh>(params.refinement_level);
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::assemble_inner_product(*mesh));
  const CompositeProblem p = problems::make_toy_problem(params, mesh, ip);
  const double t = 1e-5;
  double worst = 0.0;
  bool ok = true;
  for (int s = 0; s < samples; ++s) {
    const PrimalVector x(toy_sample(*mesh, 1e-8, rng));
    const PrimalVector v(uniform_vector(p.size(), 1.0, rng));
    const double exact = apply(p.smooth->gradient(x), v);
    const double fd = (p.smooth->value(x + t * v) - p.smooth->value(x - t * v)) / (2.0 * t);
    const double err = std::abs(exact - fd) / (1.0 + std::abs(exact));
    worst = std::max(worst, err);
    ok = ok && err <= 1e-5;
  }
  return make_result("toy_gradient", ok, worst, "max scaled error");
}

CheckResult toy_second_order(const problems::ToyProblemParams& params, std::uint64_t seed,
                             int samples) {
  Rng rng(seed);
  auto mesh = std::make_shared<const hilbert::Mesh>(params.refinement_level);
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::assemble_inner_product(*mesh));
  const CompositeProblem p = problems::make_toy_problem(params, mesh, ip);
  const double t = 1e-5;
  double worst = 0.0;
  bool ok = true;
  for (int s = 0; s < samples; ++s) {
    // Far enough from the kink that x +- t v stays on one branch per element.
    const PrimalVector x(toy_sample(*mesh, 1e-4, rng));
    const PrimalVector v(uniform_vector(p.size(), mesh->h(), rng));
    const double exact = p.smooth->second_order(x).quadratic(v);
    const double fd = apply(p.smooth->gradient(x + t * v) - p.smooth->gradient(x - t * v), v) /
                      (2.0 * t);
    const double err = std::abs(exact - fd) / (1.0 + std::abs(exact));
    worst = std::max(worst, err);
    ok = ok && err <= 1e-3;
  }
  return make_result("toy_second_order", ok, worst, "max scaled error");
}

CheckResult lambda_decomposition(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const CompositeProblem p = problems::make_toy_problem({.alpha = 40.0, .refinement_level = 3});
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const PrimalVector x(uniform_vector(p.size(), 0.1, rng));
    const PrimalVector dx(uniform_vector(p.size(), 0.1, rng));
    const double omega = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    const double lhs = eval_lambda(p, x, dx, 0.0) +
                       0.5 * omega * std::pow(hilbert::norm_primal(dx, *p.ip), 2);
    const double rhs = eval_lambda(p, x, dx, omega);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return make_result("lambda_decomposition", worst <= 1e-12, worst, "max relative gap");
}

CheckResult shift_invariance(std::uint64_t seed, int kappas) {
  Rng rng(seed);
  const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
  const PrimalVector x(uniform_vector(inst.problem.size(), 1.0, rng));
  const double omega = 1.0;
  const PrimalVector reference = trial_step(inst.problem, x, omega);
  std::uniform_real_distribution<double> k(-1.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < kappas; ++s) {
    const CompositeProblem shifted = shift_problem(inst.problem, k(rng));
    const PrimalVector step = trial_step(shifted, x, omega);
    worst = std::max(worst, hilbert::norm_primal(step - reference, *inst.problem.ip));
  }
  return make_result("shift_invariance", worst <= 1e-6, worst, "max step gap");
}

CheckResult prox_regularity(std::uint64_t seed, int instances) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < instances; ++s) {
    const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
    const CompositeProblem& p = inst.problem;
    const SecondOrderForm H(inst.A);
    const DualVector phi1(uniform_vector(p.size(), 2.0, rng));
    const DualVector phi2(uniform_vector(p.size(), 2.0, rng));
    const PrimalVector y1 = scaled_prox({H, phi1, p.nonsmooth, *p.ip});
    const PrimalVector y2 = scaled_prox({H, phi2, p.nonsmooth, *p.ip});
    const double ratio = hilbert::norm_primal(y1 - y2, *p.ip) * (inst.kappa1 + inst.kappa2) /
                         hilbert::norm_dual(phi1 - phi2, *p.ip);
    worst = std::max(worst, ratio);
  }
  return make_result("prox_regularity", worst <= 1.0 + 1e-4, worst,
                     "max ||dP|| (kappa1+kappa2) / ||dphi||");
}

CheckResult second_prox_inequality(std::uint64_t seed, int instances) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < instances; ++s) {
    const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
    const CompositeProblem& p = inst.problem;
    const SecondOrderForm H(inst.A);
    const DualVector phi(uniform_vector(p.size(), 2.0, rng));
    const PrimalVector u = scaled_prox({H, phi, p.nonsmooth, *p.ip});
    for (int r = 0; r < 5; ++r) {
      const PrimalVector xi(uniform_vector(p.size(), 1.0, rng));
      const PrimalVector d = xi - u;
      const double lhs = apply(phi - H.apply(u), d);
      const double rhs = p.nonsmooth.value(xi, *p.ip) - p.nonsmooth.value(u, *p.ip) -
                         0.5 * inst.kappa2 * std::pow(hilbert::norm_primal(d, *p.ip), 2);
      worst = std::max(worst, lhs - rhs);
    }
  }
  return make_result("second_prox_inequality", worst <= 1e-8, worst, "max violation");
}

CheckResult step_relations(std::uint64_t seed, int instances) {
  Rng rng(seed);
  const double tol = 1e-6;
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < instances; ++s) {
    const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
    const CompositeProblem& p = inst.problem;
    const double kappa = inst.kappa1 + inst.kappa2;
    const PrimalVector x(uniform_vector(p.size(), 1.0, rng));
    const LocalModel model = linearize(p, x);
    const PrimalVector full = trial_step(p, model, 0.0);
    const double n_full = hilbert::norm_primal(full, *p.ip);
    for (double omega : {0.1, 1.0, 10.0}) {
      const PrimalVector damped = trial_step(p, model, omega);
      const double n_damped = hilbert::norm_primal(damped, *p.ip);
      const double gap = hilbert::norm_primal(full - damped, *p.ip);
      worst = std::max({worst, gap - (omega / kappa) * n_damped - tol, n_damped - n_full - tol,
                        n_full - (omega / kappa + 1.0) * n_damped - tol});
    }
  }
  return make_result("step_relations", worst <= 0.0, worst, "max violation");
}

CheckResult quadratic_constants(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
  const auto& M = inst.problem.ip->matrix();
  double low = std::numeric_limits<double>::infinity();
  double high = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = uniform_vector(inst.A.rows(), 1.0, rng);
    const double q = v.dot(inst.A * v) / v.dot(M * v);
    low = std::min(low, q);
    high = std::max(high, q);
  }
  const bool ok = inst.kappa1 <= low && high <= inst.lipschitz + 1e-6;
  std::ostringstream os;
  os << "kappa1 = " << inst.kappa1 << " <= " << low << ", " << high << " <= L = " << inst.lipschitz;
  return {"quadratic_constants", ok, os.str()};
}

CheckResult subsolver_monotone(std::uint64_t seed, int instances) {
  Rng rng(seed);
  int violations = 0;
  int cycles = 0;
  for (int s = 0; s < instances; ++s) {
    const auto inst = problems::make_quadratic_l1(random_options(rng, 50));
    const CompositeProblem& p = inst.problem;
    const SecondOrderForm H(inst.A);
    const DualVector phi(uniform_vector(p.size(), 2.0, rng));
    const PrimalVector start(uniform_vector(p.size(), 1.0, rng));
    const ProxResult r = solve_scaled_prox({H, phi, p.nonsmooth, *p.ip}, start);
    for (std::size_t c = 1; c < r.objective_trace.size(); ++c) {
      ++cycles;
      if (r.objective_trace[c] > r.objective_trace[c - 1]) ++violations;
    }
  }
  return {"subsolver_monotone", violations == 0,
          std::to_string(violations) + " increases in " + std::to_string(cycles) + " cycles"};
}

CheckResult soss_suite() {
  using namespace problems;
  std::vector<std::string> failures;

  for (const auto& row : remainder_table(max_squared_case())) {
    if (row.soss_ratio != 0.0 || row.semismooth_ratio != 0.0) {
      failures.push_back("max_sq nonzero at j=" + std::to_string(row.j));
      break;
    }
  }

  bool bounded = true;
  bool separated = false;
  for (const auto& row : remainder_table(x3sin_case())) {
    bounded = bounded && row.soss_ratio <= row.xi;
    separated = separated || (row.xi < 1e-4 && row.semismooth_ratio > 0.5);
  }
  if (!bounded) failures.push_back("x3sin second-order ratio exceeds xi");
  if (!separated) failures.push_back("x3sin semismooth ratio never exceeds 0.5");

  const ChainReport chain = soss_chain_check(max_squared_case(), sine_inner(), 0.0);
  if (!chain.decays) failures.push_back("chain rule ratio does not decay");

  const auto exp_rows = remainder_table(exp_case());
  if (!(exp_rows.back().soss_ratio < 1e-6 && exp_rows.back().semismooth_ratio < 1e-6)) {
    failures.push_back("exp ratios do not vanish");
  }

  std::string detail = "all cases behave";
  if (!failures.empty()) {
    detail.clear();
    for (const auto& f : failures) detail += (detail.empty() ? "" : "; ") + f;
  }
  return {"soss_suite", failures.empty(), detail};
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(riesz_isometry(seed));
  out.push_back(metric_spd());
  for (double alpha : {0.0, 40.0, 80.0}) {
    const problems::ToyProblemParams params{.alpha = alpha};
    CheckResult g = toy_gradient(params, seed);
    CheckResult h = toy_second_order(params, seed);
    g.name += "_alpha" + std::to_string(static_cast<int>(alpha));
    h.name += "_alpha" + std::to_string(static_cast<int>(alpha));
    out.push_back(std::move(g));
    out.push_back(std::move(h));
  }
  out.push_back(lambda_decomposition(seed));
  out.push_back(shift_invariance(seed));
  out.push_back(prox_regularity(seed));
  out.push_back(second_prox_inequality(seed));
  out.push_back(step_relations(seed));
  out.push_back(quadratic_constants(seed));
  out.push_back(subsolver_monotone(seed));
  out.push_back(soss_suite());
  return out;
}

}  // namespace semiprox::properties
