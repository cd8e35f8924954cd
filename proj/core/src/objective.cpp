#include "semiprox/objective.hpp"

#include <cmath>
#include <string>

namespace semiprox {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw SizeMismatch(what);
}

double finite_or_throw(double value, const char* term) {
  if (!std::isfinite(value)) {
    throw EvaluationError(term, std::string("non-finite value of ") + term);
  }
  return value;
}

/// f - (kappa/2) ||.||_X^2 on top of another smooth part.
class ShiftedSmooth final : public SmoothPart {
 public:
  ShiftedSmooth(std::shared_ptr<const SmoothPart> base,
                std::shared_ptr<const hilbert::InnerProduct> ip, double kappa)
      : base_(std::move(base)), ip_(std::move(ip)), kappa_(kappa) {}

  Eigen::Index size() const override { return base_->size(); }

  double value(const PrimalVector& x) const override {
    return base_->value(x) - 0.5 * kappa_ * hilbert::inner(x, x, *ip_);
  }

  DualVector gradient(const PrimalVector& x) const override {
    return base_->gradient(x) - kappa_ * hilbert::riesz(x, *ip_);
  }

  SecondOrderForm second_order(const PrimalVector& x) const override {
    return base_->second_order(x).plus(-kappa_, ip_->matrix());
  }

  double difference(const PrimalVector& x, const PrimalVector& dx) const override {
    const Eigen::VectorXd m_dx = ip_->matrix() * dx.values();
    return base_->difference(x, dx) -
           kappa_ * (x.values().dot(m_dx) + 0.5 * dx.values().dot(m_dx));
  }

  std::optional<double> kappa1_floor() const override {
    if (auto k = base_->kappa1_floor()) return *k - kappa_;
    return std::nullopt;
  }

 private:
  std::shared_ptr<const SmoothPart> base_;
  std::shared_ptr<const hilbert::InnerProduct> ip_;
  double kappa_;
};

}  // namespace

SecondOrderForm::SecondOrderForm(SparseMatrix matrix) : matrix_(std::move(matrix)) {
  require(matrix_.rows() == matrix_.cols(), "second order form must be square");
  matrix_.makeCompressed();
}

SecondOrderForm SecondOrderForm::zero(Eigen::Index n) { return SecondOrderForm(SparseMatrix(n, n)); }

DualVector SecondOrderForm::apply(const PrimalVector& v) const {
  require(v.size() == size(), "second order form applied to vector of wrong size");
  return DualVector(Eigen::VectorXd(matrix_ * v.values()));
}

double SecondOrderForm::quadratic(const PrimalVector& v) const {
  return apply(v).values().dot(v.values());
}

double SecondOrderForm::row_sum_bound() const {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(size());
  for (Eigen::Index col = 0; col < matrix_.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) sums[it.row()] += std::abs(it.value());
  return size() > 0 ? sums.maxCoeff() : 0.0;
}

SecondOrderForm SecondOrderForm::plus(double s, const SparseMatrix& other) const {
  require(other.rows() == size() && other.cols() == size(), "second order forms of different size");
  if (s == 0.0) return *this;
  return SecondOrderForm(SparseMatrix(matrix_ + s * other));
}

NonsmoothPart::NonsmoothPart(Eigen::VectorXd l1_weights, double quadratic_weight)
    : weights_(std::move(l1_weights)), quadratic_(quadratic_weight) {
  if ((weights_.array() < 0.0).any()) {
    throw ConfigError("l1 weights must be non-negative");
  }
}

double NonsmoothPart::value(const PrimalVector& x, const hilbert::InnerProduct& ip) const {
  require(x.size() == size(), "nonsmooth part evaluated at vector of wrong size");
  double v = weights_.dot(x.values().cwiseAbs());
  if (quadratic_ != 0.0) v += 0.5 * quadratic_ * hilbert::inner(x, x, ip);
  return v;
}

double NonsmoothPart::difference(const PrimalVector& x, const PrimalVector& dx,
                                 const hilbert::InnerProduct& ip) const {
  require(x.size() == size() && dx.size() == size(), "nonsmooth increment of wrong size");
  double d = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (weights_[i] == 0.0 || dx[i] == 0.0) continue;
    d += weights_[i] * (std::abs(x[i] + dx[i]) - std::abs(x[i]));
  }
  if (quadratic_ != 0.0) {
    const Eigen::VectorXd m_dx = ip.matrix() * dx.values();
    d += quadratic_ * (x.values().dot(m_dx) + 0.5 * dx.values().dot(m_dx));
  }
  return d;
}

NonsmoothPart NonsmoothPart::shifted(double kappa) const {
  return NonsmoothPart(weights_, quadratic_ + kappa);
}

void CompositeProblem::validate() const {
  require(smooth != nullptr && ip != nullptr, "composite problem is missing a part");
  require(smooth->size() == ip->size(), "smooth part and inner product sizes differ");
  require(nonsmooth.size() == ip->size(), "nonsmooth part and inner product sizes differ");
}

LocalModel linearize(const CompositeProblem& p, const PrimalVector& x) {
  require(x.size() == p.size(), "linearization point of wrong size");
  LocalModel m;
  m.x = x;
  m.f_value = finite_or_throw(p.smooth->value(x), "f");
  m.gradient = p.smooth->gradient(x);
  m.hessian = p.smooth->second_order(x);
  if (!m.gradient.values().allFinite()) throw EvaluationError("f", "non-finite derivative of f");
  return m;
}

double eval_f(const CompositeProblem& p, const PrimalVector& x) {
  require(x.size() == p.size(), "evaluation point of wrong size");
  return finite_or_throw(p.smooth->value(x), "f");
}

double eval_g(const CompositeProblem& p, const PrimalVector& x) {
  return finite_or_throw(p.nonsmooth.value(x, *p.ip), "g");
}

double eval_F(const CompositeProblem& p, const PrimalVector& x) {
  return eval_f(p, x) + eval_g(p, x);
}

double eval_F_difference(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx) {
  const double df = finite_or_throw(p.smooth->difference(x, dx), "f");
  const double dg = finite_or_throw(p.nonsmooth.difference(x, dx, *p.ip), "g");
  return df + dg;
}

double eval_lambda(const CompositeProblem& p, const LocalModel& model, const PrimalVector& dx,
                   double omega) {
  require(dx.size() == p.size(), "model evaluated at step of wrong size");
  const Eigen::VectorXd h_dx = model.hessian.matrix() * dx.values();
  double value = apply(model.gradient, dx) + 0.5 * h_dx.dot(dx.values());
  if (omega != 0.0) value += 0.5 * omega * hilbert::inner(dx, dx, *p.ip);
  value += p.nonsmooth.difference(model.x, dx, *p.ip);
  return finite_or_throw(value, "F");
}

double eval_lambda(const CompositeProblem& p, const PrimalVector& x, const PrimalVector& dx,
                   double omega) {
  return eval_lambda(p, linearize(p, x), dx, omega);
}

CompositeProblem shift_problem(const CompositeProblem& p, double kappa) {
  p.validate();
  if (kappa == 0.0) return p;
  CompositeProblem shifted;
  shifted.smooth = std::make_shared<ShiftedSmooth>(p.smooth, p.ip, kappa);
  shifted.nonsmooth = p.nonsmooth.shifted(kappa);
  shifted.ip = p.ip;
  return shifted;
}

}  // namespace semiprox
