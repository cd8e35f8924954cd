#include "semiprox/problems/soss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semiprox::problems {

double soss_remainder(const ScalarSossCase& c, double xi) {
  const double x = c.x_star + xi;
  return std::abs(c.T(x) - c.T(c.x_star) - c.T_prime(c.x_star) * xi - 0.5 * c.T_second(x) * xi * xi);
}

double semismooth_remainder(const ScalarSossCase& c, double xi) {
  const double x = c.x_star + xi;
  return std::abs(c.T_prime(c.x_star) - c.T_prime(x) + c.T_second(x) * xi);
}

std::vector<RemainderRow> remainder_table(const ScalarSossCase& c, int max_j) {
  std::vector<RemainderRow> rows;
  rows.reserve(static_cast<std::size_t>(std::max(max_j, 0)));
  for (int j = 1; j <= max_j; ++j) {
    const double xi = std::ldexp(1.0, -j);
    rows.push_back({j, xi, soss_remainder(c, xi) / (xi * xi), semismooth_remainder(c, xi) / xi});
  }
  return rows;
}

ScalarSossCase compose(const ScalarSossCase& outer, const SmoothScalar& inner, double x_star) {
  ScalarSossCase c;
  c.name = outer.name + "_of_inner";
  c.x_star = x_star;
  c.T = [outer, inner](double x) { return outer.T(inner.S(x)); };
  c.T_prime = [outer, inner](double x) { return outer.T_prime(inner.S(x)) * inner.S_prime(x); };
  c.T_second = [outer, inner](double x) {
    const double s = inner.S(x);
    const double ds = inner.S_prime(x);
    return outer.T_second(s) * ds * ds + outer.T_prime(s) * inner.S_second(x);
  };
  return c;
}

ChainReport soss_chain_check(const ScalarSossCase& outer, const SmoothScalar& inner,
                             double x_star) {
  ChainReport r;
  r.composed = compose(outer, inner, x_star);
  r.rows = remainder_table(r.composed, 40);
  r.initial_ratio = r.rows.front().soss_ratio;
  for (const auto& row : r.rows) {
    if (row.j >= 20) r.max_ratio_tail = std::max(r.max_ratio_tail, row.soss_ratio);
  }
  r.decays = r.max_ratio_tail <= 1e-3 * r.initial_ratio;
  return r;
}

ScalarSossCase max_squared_case() {
  ScalarSossCase c;
  c.name = "max_sq";
  c.T = [](double x) { return x > 0.0 ? x * x : 0.0; };
  c.T_prime = [](double x) { return x > 0.0 ? 2.0 * x : 0.0; };
  c.T_second = [](double x) { return x >= 0.0 ? 2.0 : 0.0; };
  return c;
}

ScalarSossCase x3sin_case() {
  ScalarSossCase c;
  c.name = "x3sin";
  c.T = [](double x) { return x == 0.0 ? 0.0 : x * x * x * std::sin(1.0 / x); };
  c.T_prime = [](double x) {
    if (x == 0.0) return 0.0;
    return x * (3.0 * x * std::sin(1.0 / x) - std::cos(1.0 / x));
  };
  c.T_second = [](double) { return 0.0; };
  return c;
}

namespace {

// exp(x) - 1 - x, summed as a series near 0 so that the small remainders
// are not swamped by rounding of the O(1) affine part (which the remainders
// do not see anyway).
double exp_minus_affine(double x) {
  if (std::abs(x) > 1e-2) return std::expm1(x) - x;
  double term = 0.5 * x * x;
  double sum = term;
  for (int k = 3; k < 12; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

}  // namespace

ScalarSossCase exp_case() {
  ScalarSossCase c;
  c.name = "exp_smooth";
  c.T = exp_minus_affine;
  c.T_prime = [](double x) { return std::expm1(x); };
  c.T_second = [](double x) { return std::exp(x); };
  return c;
}

SmoothScalar sine_inner() {
  return {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
          [](double x) { return -std::sin(x); }};
}

ScalarSossCase chain_sin_case() {
  ScalarSossCase c = compose(max_squared_case(), sine_inner(), 0.0);
  c.name = "chain_sin";
  return c;
}

ScalarSossCase soss_case(const std::string& name) {
  if (name == "max_sq") return max_squared_case();
  if (name == "x3sin") return x3sin_case();
  if (name == "chain_sin") return chain_sin_case();
  if (name == "exp_smooth") return exp_case();
  throw std::invalid_argument("unknown soss case '" + name + "'");
}

std::vector<std::string> soss_case_names() { return {"max_sq", "x3sin", "chain_sin", "exp_smooth"}; }

}  // namespace semiprox::problems
