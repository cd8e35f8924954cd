#pragma once

#include <cstdint>
#include <memory>

#include "semiprox/hilbert.hpp"
#include "semiprox/objective.hpp"

namespace semiprox::problems {

enum class MetricKind {
  identity,
  banded,  ///< random diagonally dominant tridiagonal SPD matrix
};

struct QuadraticL1Options {
  Eigen::Index n = 50;
  std::uint64_t seed = 1;
  double kappa1 = 0.5;
  double kappa2 = 0.5;
  /// Per-coordinate l1 weights; empty means every weight equals c_scale.
  Eigen::VectorXd c_weights;
  double c_scale = 0.2;
  double coupling = 1.0;   ///< scale of G in A = kappa1 M + G^T G (0 gives G = 0)
  double rhs_scale = 1.0;  ///< scale of the linear term b (0 gives b = 0)
  MetricKind metric = MetricKind::banded;
};

/// f(x) = 1/2 x^T A x - b^T x with A = kappa1 M + G^T G,
/// g(x) = sum c_i |x_i| + (kappa2/2) ||x||_X^2.
struct QuadraticL1Instance {
  CompositeProblem problem;
  SparseMatrix A;
  Eigen::VectorXd b;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double lipschitz = 0.0;  ///< largest generalized eigenvalue of (A, M)
};

QuadraticL1Instance make_quadratic_l1(const QuadraticL1Options& options);

/// Same family with explicitly given data. kappa1 is recorded, not checked.
QuadraticL1Instance make_quadratic_problem(SparseMatrix A, Eigen::VectorXd b,
                                           Eigen::VectorXd c_weights, double kappa1, double kappa2,
                                           std::shared_ptr<const hilbert::InnerProduct> ip);

/// Largest generalized eigenvalue of (A, M) by power iteration on M^-1 A.
double generalized_power_iteration(const SparseMatrix& A, const hilbert::InnerProduct& ip,
                                   std::uint64_t seed = 7);

}  // namespace semiprox::problems
