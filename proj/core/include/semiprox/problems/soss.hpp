#pragma once

#include <functional>
#include <string>
#include <vector>

namespace semiprox::problems {

using ScalarFunction = std::function<double(double)>;

/// Scalar T with derivative T' and a chosen second-order evaluator T''
/// (evaluated at the perturbed point x* + xi).
struct ScalarSossCase {
  std::string name;
  ScalarFunction T;
  ScalarFunction T_prime;
  ScalarFunction T_second;
  double x_star = 0.0;
};

/// Twice continuously differentiable inner function for the chain rule.
struct SmoothScalar {
  ScalarFunction S;
  ScalarFunction S_prime;
  ScalarFunction S_second;
};

/// |T(x*+xi) - T(x*) - T'(x*) xi - 1/2 T''(x*+xi) xi^2|
double soss_remainder(const ScalarSossCase& c, double xi);

/// |T'(x*) - T'(x*+xi) + T''(x*+xi) xi|
double semismooth_remainder(const ScalarSossCase& c, double xi);

struct RemainderRow {
  int j = 0;
  double xi = 0.0;
  double soss_ratio = 0.0;        ///< soss_remainder / xi^2
  double semismooth_ratio = 0.0;  ///< semismooth_remainder / |xi|
};

/// Rows for xi = 2^-j, j = 1..max_j.
std::vector<RemainderRow> remainder_table(const ScalarSossCase& c, int max_j = 40);

/// T o S at x* with (T o S)''(x) = T''(S(x)) S'(x)^2 + T'(S(x)) S''(x).
ScalarSossCase compose(const ScalarSossCase& outer, const SmoothScalar& inner, double x_star);

struct ChainReport {
  ScalarSossCase composed;
  std::vector<RemainderRow> rows;
  double initial_ratio = 0.0;    ///< soss ratio at j = 1
  double max_ratio_tail = 0.0;   ///< max soss ratio over j >= 20
  bool decays = false;           ///< max_ratio_tail <= 1e-3 * initial_ratio
};

/// Numerical check that the composition is second order semi-smooth at
/// S^-1-preimage x* (outer.x_star must equal S(x*)).
ChainReport soss_chain_check(const ScalarSossCase& outer, const SmoothScalar& inner, double x_star);

/// max{0,x}^2 with T'' = 2 * 1_{x >= 0}, at x* = 0.
ScalarSossCase max_squared_case();
/// x^3 sin(1/x) with T'' = 0, at x* = 0.
ScalarSossCase x3sin_case();
/// exp with its true second derivative, at x* = 0.
ScalarSossCase exp_case();
/// max{0, sin x}^2 built through compose(), at x* = 0.
ScalarSossCase chain_sin_case();

SmoothScalar sine_inner();

/// Registry lookup: max_sq, x3sin, chain_sin, exp_smooth. Throws
/// std::invalid_argument for unknown names.
ScalarSossCase soss_case(const std::string& name);
std::vector<std::string> soss_case_names();

}  // namespace semiprox::problems
