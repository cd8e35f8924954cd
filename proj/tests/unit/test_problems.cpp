#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "semiprox/problems/quadratic_l1.hpp"
#include "semiprox/problems/soss.hpp"
#include "semiprox/problems/toy.hpp"
#include "semiprox/proxnewton.hpp"

using namespace semiprox;
using namespace semiprox::problems;

namespace {

Eigen::VectorXd random_vector(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Element gradients of a nodal vector on the given mesh.
std::vector<double> gradient_norms(const hilbert::Mesh& mesh, const Eigen::VectorXd& u) {
  std::vector<double> out;
  for (const auto& t : mesh.elements()) {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (int a = 0; a < 3; ++a)
      if (mesh.dof(t.nodes[a]) >= 0) g += u[mesh.dof(t.nodes[a])] * t.basis_gradients[a];
    out.push_back(g.norm());
  }
  return out;
}

Eigen::VectorXd off_kink_point(const hilbert::Mesh& mesh, double margin, std::mt19937_64& rng) {
  for (;;) {
    Eigen::VectorXd u = random_vector(mesh.num_dofs(), 2.0 * mesh.h(), rng);
    bool ok = true;
    for (double g : gradient_norms(mesh, u)) ok = ok && std::abs(g - 1.0) >= margin;
    if (ok) return u;
  }
}

}  // namespace

TEST_CASE("quadratic family with G = 0, b = 0 and g = 0 is solved at zero") {
  QuadraticL1Options o;
  o.coupling = 0.0;
  o.rhs_scale = 0.0;
  o.c_weights = Eigen::VectorXd::Zero(o.n);
  o.kappa2 = 0.0;
  const auto inst = make_quadratic_l1(o);
  std::mt19937_64 rng(1);
  SolverConfig cfg;
  const SolveResult r = solve(inst.problem, PrimalVector(random_vector(o.n, 1.0, rng)), cfg);
  REQUIRE(r.converged());
  CHECK(hilbert::norm_primal(r.x_final, *inst.problem.ip) <= cfg.epsilon);
}

TEST_CASE("two-dimensional soft threshold instance") {
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::InnerProduct::identity(2));
  SparseMatrix A(2, 2);
  A.setIdentity();
  const auto inst = make_quadratic_problem(A, Eigen::Vector2d(2.0, 0.0), Eigen::Vector2d(1.0, 1.0), 1.0, 0.0, ip);
  const SolveResult r = solve(inst.problem, PrimalVector::zero(2));
  REQUIRE(r.converged());
  CHECK(r.x_final[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.x_final[1]) <= 1e-12);
}

TEST_CASE("quadratic family constants bracket the Rayleigh quotient") {
  std::mt19937_64 rng(2);
  const auto inst = make_quadratic_l1({});
  const Eigen::MatrixXd A(inst.A);
  const Eigen::MatrixXd M(inst.problem.ip->matrix());
  for (int s = 0; s < 1000; ++s) {
    const Eigen::VectorXd v = random_vector(A.rows(), 1.0, rng);
    const double q = v.dot(A * v) / v.dot(M * v);
    CHECK(v.dot(A * v) >= inst.kappa1 * v.dot(M * v) - 1e-10);
    CHECK(q <= inst.lipschitz + 1e-6);
  }
  // dense generalized eigenvalue solver as oracle for L_f
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, M);
  CHECK(inst.lipschitz == doctest::Approx(eig.eigenvalues().maxCoeff()).epsilon(1e-8));
  CHECK(eig.eigenvalues().minCoeff() >= inst.kappa1 - 1e-10);
}

TEST_CASE("quadratic family is deterministic in its seed") {
  const auto a = make_quadratic_l1({.n = 20, .seed = 3});
  const auto b = make_quadratic_l1({.n = 20, .seed = 3});
  const auto c = make_quadratic_l1({.n = 20, .seed = 4});
  CHECK((Eigen::MatrixXd(a.A) - Eigen::MatrixXd(b.A)).norm() == 0.0);
  CHECK((Eigen::MatrixXd(a.A) - Eigen::MatrixXd(c.A)).norm() > 0.0);
}

TEST_CASE("toy objective: parameters, separability, derivatives") {
  CHECK_THROWS_AS(make_toy_problem({.c = 0.0}), ConfigError);
  CHECK_THROWS_AS(make_toy_problem({.alpha = -1.0}), ConfigError);

  auto mesh = std::make_shared<const hilbert::Mesh>(4);
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::assemble_inner_product(*mesh));
  std::mt19937_64 rng(7);
  for (double alpha : {0.0, 40.0, 80.0}) {
    const CompositeProblem p = make_toy_problem({.alpha = alpha}, mesh, ip);
    CHECK(eval_F(p, PrimalVector::zero(p.size())) == 0.0);

    const Eigen::VectorXd u = random_vector(p.size(), 0.1, rng);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) sum += 80.0 * mesh->lumped_weights()[i] * std::abs(u[i]);
    CHECK(std::abs(eval_g(p, PrimalVector(u)) - sum) <= 1e-13 * sum);

    const double t = 1e-5;
    for (int s = 0; s < 20; ++s) {
      const PrimalVector x(off_kink_point(*mesh, 1e-4, rng));
      const PrimalVector v(random_vector(p.size(), 1.0, rng));
      const double d1 = apply(p.smooth->gradient(x), v);
      const double fd1 = (p.smooth->value(x + t * v) - p.smooth->value(x - t * v)) / (2.0 * t);
      CHECK(std::abs(d1 - fd1) <= 1e-5 * (1.0 + std::abs(d1)));

      const PrimalVector w(random_vector(p.size(), mesh->h(), rng));
      const double d2 = p.smooth->second_order(x).quadratic(w);
      const double fd2 =
          (p.smooth->value(x + t * w) - 2.0 * p.smooth->value(x) + p.smooth->value(x - t * w)) / (t * t);
      CHECK(std::abs(d2 - fd2) <= 1e-3 * (1.0 + std::abs(d2)));
    }
  }
}

TEST_CASE("toy energy of an interpolant against quadrature by hand") {
  // alpha = beta = rho = 0: f is half the stiffness energy
  auto mesh = std::make_shared<const hilbert::Mesh>(3);
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::assemble_inner_product(*mesh));
  const CompositeProblem p = make_toy_problem({.beta = 0.0, .rho = 0.0}, mesh, ip);
  const PrimalVector u = mesh->interpolate([](double x, double y) { return x * (1 - x) * y * (1 - y); });
  const double half_energy = 0.5 * u.values().dot(hilbert::assemble_stiffness(*mesh) * u.values());
  CHECK(eval_f(p, u) == doctest::Approx(half_energy).epsilon(1e-13));
}

TEST_CASE("max squared has exactly vanishing remainders") {
  for (const auto& row : remainder_table(max_squared_case())) {
    CHECK(row.soss_ratio == 0.0);
    CHECK(row.semismooth_ratio == 0.0);
  }
  const auto c = max_squared_case();
  for (double xi : {-0.5, -1e-3, 1e-3, 0.5}) {
    CHECK(soss_remainder(c, xi) == 0.0);
    CHECK(semismooth_remainder(c, xi) == 0.0);
  }
}

TEST_CASE("x^3 sin(1/x) separates the two notions") {
  const auto c = x3sin_case();
  bool big = false;
  for (const auto& row : remainder_table(c)) {
    CHECK(row.soss_ratio <= row.xi);
    big = big || (row.xi < 1e-4 && row.semismooth_ratio >= 0.5);
  }
  CHECK(big);
  // at xi = 1/(2 pi m) the semismooth ratio is |cos(2 pi m)| = 1
  for (int m : {10, 1000, 100000}) {
    const double xi = 1.0 / (2.0 * std::numbers::pi * m);
    CHECK(semismooth_remainder(c, xi) / xi == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("smooth functions have vanishing ratios") {
  const auto rows = remainder_table(exp_case());
  CHECK(rows.front().soss_ratio > 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].soss_ratio < rows[i - 1].soss_ratio);
  CHECK(rows.back().soss_ratio < 1e-11);
  CHECK(rows.back().semismooth_ratio < 1e-11);
  CHECK(std::abs(exp_case().T(0.3) - (std::exp(0.3) - 1.3)) < 1e-15);
}

TEST_CASE("chain rule with sine") {
  const ChainReport r = soss_chain_check(max_squared_case(), sine_inner(), 0.0);
  CHECK(r.decays);
  CHECK(r.rows[19].soss_ratio < 1e-4 * r.initial_ratio);
  const auto c = chain_sin_case();
  CHECK(c.T(0.2) == doctest::Approx(std::sin(0.2) * std::sin(0.2)));
  CHECK(c.T_second(0.2) == doctest::Approx(2.0 * std::cos(0.4)));
}

TEST_CASE("chain rule degenerate cases") {
  // S = identity reproduces the outer case
  const SmoothScalar id{[](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
  const auto outer = x3sin_case();
  const auto composed = compose(outer, id, 0.0);
  for (double xi : {0.3, 1e-3, 1e-7})
    CHECK(soss_remainder(composed, xi) == soss_remainder(outer, xi));

  // quadratic T with affine S: the composition is quadratic, so the
  // remainder is rounding of the O(1) value T(x*) only
  ScalarSossCase quad;
  quad.x_star = 1.0;
  quad.T = [](double s) { return s * s; };
  quad.T_prime = [](double s) { return 2.0 * s; };
  quad.T_second = [](double) { return 2.0; };
  const SmoothScalar affine{[](double x) { return 0.5 * x + 1.0; }, [](double) { return 0.5; },
                            [](double) { return 0.0; }};
  const auto q = compose(quad, affine, 0.0);
  for (int j = 10; j <= 40; ++j) {
    const double xi = std::ldexp(1.0, -j);
    CHECK(soss_remainder(q, xi) <= 4.0 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("soss registry") {
  for (const auto& name : soss_case_names()) CHECK(soss_case(name).name == name);
  CHECK_THROWS_AS(soss_case("nope"), std::invalid_argument);
}
