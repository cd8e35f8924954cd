#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiprox/problems/toy.hpp"

namespace semiprox::properties {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// ||R v||_* against ||v||_X for random v on a level-3 mesh.
CheckResult riesz_isometry(std::uint64_t seed, int samples = 1000);
/// Factorization of M succeeds with positive pivots for levels 1..5.
CheckResult metric_spd();
/// Central-difference checks of f' and H_x on the toy problem at random
/// points away from the kink |grad u| = 1.
CheckResult toy_gradient(const problems::ToyProblemParams& params, std::uint64_t seed,
                         int samples = 20);
CheckResult toy_second_order(const problems::ToyProblemParams& params, std::uint64_t seed,
                             int samples = 20);
CheckResult lambda_decomposition(std::uint64_t seed, int samples = 20);
/// Damped steps of p and shift_problem(p, kappa) agree.
CheckResult shift_invariance(std::uint64_t seed, int kappas = 5);
/// Lipschitz bound of the prox mapping with constant 1/(kappa1 + kappa2).
CheckResult prox_regularity(std::uint64_t seed, int instances = 100);
/// Variational inequality characterising the prox image.
CheckResult second_prox_inequality(std::uint64_t seed, int instances = 20);
/// Relations between the undamped and the damped step.
CheckResult step_relations(std::uint64_t seed, int instances = 50);
/// kappa1 <= Rayleigh quotient of (A, M) <= L_f.
CheckResult quadratic_constants(std::uint64_t seed, int samples = 1000);
/// Subproblem objective never increases across cycles.
CheckResult subsolver_monotone(std::uint64_t seed, int instances = 20);
CheckResult soss_suite();

std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace semiprox::properties
