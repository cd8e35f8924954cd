#pragma once

#include <stdexcept>
#include <string>

namespace semiprox {

/// Vector or matrix dimensions that do not belong together.
class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mesh or metric that cannot produce an SPD inner product.
class InvalidMesh : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A functional evaluated to a non-finite number. `term()` names the culprit
/// ("f", "g" or "F").
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string term, const std::string& what)
      : std::runtime_error(what), term_(std::move(term)) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

/// Failure of the inner proximal solver. The outer iteration reacts to both
/// kinds by increasing the damping parameter.
class SubproblemError : public std::runtime_error {
 public:
  enum class Kind { no_convergence, nonconvex, iteration_cap };

  SubproblemError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Solver or run configuration outside its admissible range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace semiprox
