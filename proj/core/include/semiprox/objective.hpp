#pragma once

#include <memory>
#include <optional>

#include "semiprox/hilbert.hpp"
#include "semiprox/vectors.hpp"

namespace semiprox {

/// Sparse symmetric bilinear form H : X x X -> R, stored as its matrix.
class SecondOrderForm {
 public:
  SecondOrderForm() = default;
  explicit SecondOrderForm(SparseMatrix matrix);

  static SecondOrderForm zero(Eigen::Index n);

  Eigen::Index size() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }

  DualVector apply(const PrimalVector& v) const;
  double quadratic(const PrimalVector& v) const;

  /// Max absolute row sum; a cheap upper bound of the Euclidean operator norm,
  /// logged as a diagnostic only.
  double row_sum_bound() const;

  /// H + s * other, e.g. the damped form H + omega M.
  SecondOrderForm plus(double s, const SparseMatrix& other) const;

 private:
  SparseMatrix matrix_;
};

/// Smooth part f with derivative f'(x) in X* and Newton derivative H_x.
class SmoothPart {
 public:
  virtual ~SmoothPart() = default;

  virtual Eigen::Index size() const = 0;
  virtual double value(const PrimalVector& x) const = 0;
  virtual DualVector gradient(const PrimalVector& x) const = 0;
  virtual SecondOrderForm second_order(const PrimalVector& x) const = 0;

  /// f(x + dx) - f(x). Implementations with a closed-form increment override
  /// this to avoid cancellation when dx is tiny.
  virtual double difference(const PrimalVector& x, const PrimalVector& dx) const {
    return value(x + dx) - value(x);
  }

  /// Lipschitz constant of f' (X -> X*), when known.
  virtual std::optional<double> lipschitz_estimate() const { return std::nullopt; }
  /// Lower bound kappa1 with H_x(v,v) >= kappa1 ||v||_X^2, when known.
  virtual std::optional<double> kappa1_floor() const { return std::nullopt; }
};

/// Separable nonsmooth part
///   g(x) = sum_i w_i |x_i| + (q/2) ||x||_X^2,
/// with w_i >= 0. The quadratic term carries the convexity modulus
/// kappa2 = q and is what the convexity shift of a problem moves around.
class NonsmoothPart {
 public:
  NonsmoothPart() = default;
  explicit NonsmoothPart(Eigen::VectorXd l1_weights, double quadratic_weight = 0.0);

  static NonsmoothPart zero(Eigen::Index n) { return NonsmoothPart(Eigen::VectorXd::Zero(n)); }

  Eigen::Index size() const { return weights_.size(); }
  const Eigen::VectorXd& l1_weights() const { return weights_; }
  double quadratic_weight() const { return quadratic_; }
  double kappa2() const { return quadratic_; }
  bool is_convex() const { return quadratic_ >= 0.0; }

  double value(const PrimalVector& x, const hilbert::InnerProduct& ip) const;
  double difference(const PrimalVector& x, const PrimalVector& dx,
                    const hilbert::InnerProduct& ip) const;

  /// Same weights, quadratic weight increased by kappa.
  NonsmoothPart shifted(double kappa) const;

 private:
  Eigen::VectorXd weights_;
  double quadratic_ = 0.0;
};

/// F = f + g on a discretised Hilbert space.
struct CompositeProblem {
  std::shared_ptr<const SmoothPart> smooth;
  NonsmoothPart nonsmooth;
  std::shared_ptr<const hilbert::InnerProduct> ip;

  Eigen::Index size() const { return ip->size(); }
  const hilbert::InnerProduct& metric() const { return *ip; }
  /// Throws SizeMismatch if the parts disagree on the dimension.
  void validate() const;
};

/// Everything the step computation needs from f at a fixed iterate.
struct LocalModel {
  PrimalVector x;
  double f_value = 0.0;
  DualVector gradient;
  SecondOrderForm hessian;
};

LocalModel linearize(const CompositeProblem& p, const PrimalVector& x);

double eval_f(const CompositeProblem& p, const PrimalVector& x);
double eval_g(const CompositeProblem& p, const PrimalVector& x);
double eval_F(const CompositeProblem& p, const PrimalVector& x);

/// F(x + dx) - F(x) from the parts' increment formulas.
double eval_F_difference(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx);

/// Damped model value
///   lambda_omega(dx) = f'(x)dx + 1/2 H_x(dx,dx) + omega/2 ||dx||_X^2 + g(x+dx) - g(x).
double eval_lambda(const CompositeProblem& p, const LocalModel& model, const PrimalVector& dx,
                   double omega);
double eval_lambda(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx,
                   double omega);

/// Equivalent problem with f - (kappa/2)||.||_X^2 and g + (kappa/2)||.||_X^2.
/// Newton derivatives become H_x - kappa M; update steps are unchanged.
CompositeProblem shift_problem(const CompositeProblem& p, double kappa);

}  // namespace semiprox
