#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "semiprox/baselines.hpp"
#include "semiprox/problems/toy.hpp"
#include "semiprox/proxnewton.hpp"

namespace semiprox::cli {

enum class Method { proxnewton, proxgrad, fista };
enum class ProblemKind { toy, quadl1, soss };

Method parse_method(const std::string& name);
std::string to_string(Method m);

/// Everything a run needs. Built from `key = value` lines; unknown keys
/// and out-of-range values raise ConfigError.
struct RunConfig {
  Method method = Method::proxnewton;
  ProblemKind problem = ProblemKind::toy;

  problems::ToyProblemParams toy;
  std::vector<int> refinements;  ///< grid rows for `table`
  std::vector<double> alphas;    ///< grid columns for `table`

  Eigen::Index n = 50;
  double kappa1 = 0.5;
  double kappa2 = 0.5;
  std::string soss_case = "max_sq";
  double shift = 0.0;

  SolverConfig solver;
  int first_order_max_iter = 1'000'000;
  bool count_trials = false;
  std::uint64_t seed = 1;

  /// Proximal gradient / FISTA settings sharing the solver keys.
  FirstOrderConfig first_order() const;
  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace semiprox::cli
