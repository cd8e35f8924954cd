#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "semiprox/baselines.hpp"
#include "semiprox/problems/quadratic_l1.hpp"
#include "semiprox/problems/toy.hpp"

using namespace semiprox;

namespace {

/// Textbook accelerated proximal gradient with a fixed step 1/L for
/// 1/2 x^T A x - b^T x + c|x|_1 + kappa2/2 |x|^2 in Euclidean space.
std::vector<double> reference_fista(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double c,
                                    double kappa2, double L, int iterations) {
  const Eigen::Index n = b.size();
  auto F = [&](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(A * x) - b.dot(x) + c * x.lpNorm<1>() + 0.5 * kappa2 * x.squaredNorm();
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = x;
  double t = 1.0;
  std::vector<double> values;
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXd v = L * y - (A * y - b);
    Eigen::VectorXd next(n);
    for (Eigen::Index i = 0; i < n; ++i)
      next[i] = std::copysign(std::max(std::abs(v[i]) - c, 0.0), v[i]) / (L + kappa2);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - x);
    x = next;
    t = t_next;
    values.push_back(F(x));
  }
  return values;
}

}  // namespace

TEST_CASE("FISTA momentum sequence") {
  CHECK(fista_next_t(1.0) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  double t = 1.0;
  for (int k = 0; k < 100; ++k) t = fista_next_t(t);
  CHECK(t > 50.0);
}

TEST_CASE("FISTA reproduces the textbook iteration in Euclidean space") {
  problems::QuadraticL1Options o;
  o.n = 30;
  o.seed = 4;
  o.metric = problems::MetricKind::identity;
  const auto inst = problems::make_quadratic_l1(o);
  const double L = 1.01 * inst.lipschitz;
  FirstOrderConfig cfg;
  cfg.initial_step_scale = L;
  cfg.max_iter = 30;
  const SolveResult r = fista_solve(inst.problem, PrimalVector::zero(o.n), cfg);
  const auto expected = reference_fista(Eigen::MatrixXd(inst.A), inst.b, o.c_scale, o.kappa2, L, 30);
  std::vector<double> got;
  for (const auto& rec : r.history) {
    CHECK(rec.accepted);
    got.push_back(rec.F_value);
  }
  REQUIRE(got.size() == expected.size());
  for (std::size_t k = 0; k < got.size(); ++k)
    CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-9));
}

TEST_CASE("FISTA backtracking only grows L") {
  const CompositeProblem p = problems::make_toy_problem({});
  const SolveResult r = fista_solve(p, PrimalVector::zero(p.size()));
  REQUIRE(r.converged());
  double L = 0.0;
  for (const auto& rec : r.history) {
    CHECK(rec.omega >= L);
    L = rec.omega;
  }
  // rejected trials are followed by a trial with twice the constant
  for (std::size_t i = 0; i + 1 < r.history.size(); ++i)
    if (!r.history[i].accepted) CHECK(r.history[i + 1].omega == 2.0 * r.history[i].omega);
}

TEST_CASE("first-order methods reach the Proximal Newton minimizer") {
  const auto inst = problems::make_quadratic_l1({.n = 40, .seed = 9});
  const CompositeProblem& p = inst.problem;
  const SolveResult pn = solve(p, PrimalVector::zero(40));
  const SolveResult pg = prox_gradient_solve(p, PrimalVector::zero(40));
  const SolveResult fi = fista_solve(p, PrimalVector::zero(40));
  REQUIRE(pn.converged());
  REQUIRE(pg.converged());
  REQUIRE(fi.converged());
  CHECK(hilbert::norm_primal(pg.x_final - pn.x_final, *p.ip) <= 1e-6);
  CHECK(hilbert::norm_primal(fi.x_final - pn.x_final, *p.ip) <= 1e-6);
  CHECK(pn.accepted_count() < pg.accepted_count());
}

TEST_CASE("proximal gradient keeps the descent bookkeeping") {
  const CompositeProblem p = problems::make_toy_problem({.alpha = 40.0, .refinement_level = 3});
  FirstOrderConfig cfg;
  const SolveResult r = prox_gradient_solve(p, PrimalVector::zero(p.size()), cfg);
  REQUIRE(r.converged());
  double F = r.initial_F;
  for (const auto& rec : r.history) {
    if (!rec.accepted) continue;
    CHECK(rec.F_value - F <= cfg.gamma * rec.lambda_value + 1e-10);
    F = rec.F_value;
  }
}

TEST_CASE("FISTA refuses a nonconvex g") {
  const CompositeProblem p = shift_problem(problems::make_toy_problem({.refinement_level = 2}), -0.5);
  CHECK_THROWS_AS(fista_solve(p, PrimalVector::zero(p.size())), ConfigError);
}

TEST_CASE("first-order configuration is validated") {
  FirstOrderConfig c;
  c.backtracking_shrink = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.initial_step_scale = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
