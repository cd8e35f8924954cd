#include "semiprox/problems/quadratic_l1.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

namespace semiprox::problems {
namespace {

class QuadraticSmooth final : public SmoothPart {
 public:
  QuadraticSmooth(SparseMatrix A, Eigen::VectorXd b, double kappa1, double lipschitz)
      : hessian_(std::move(A)), b_(std::move(b)), kappa1_(kappa1), lipschitz_(lipschitz) {}

  Eigen::Index size() const override { return b_.size(); }

  double value(const PrimalVector& x) const override {
    return 0.5 * hessian_.quadratic(x) - b_.dot(x.values());
  }
  DualVector gradient(const PrimalVector& x) const override {
    return DualVector(Eigen::VectorXd(hessian_.matrix() * x.values() - b_));
  }
  SecondOrderForm second_order(const PrimalVector&) const override { return hessian_; }

  double difference(const PrimalVector& x, const PrimalVector& dx) const override {
    const Eigen::VectorXd a_dx = hessian_.matrix() * dx.values();
    return (a_dx.dot(x.values()) - b_.dot(dx.values())) + 0.5 * a_dx.dot(dx.values());
  }

  std::optional<double> lipschitz_estimate() const override { return lipschitz_; }
  std::optional<double> kappa1_floor() const override { return kappa1_; }

 private:
  SecondOrderForm hessian_;
  Eigen::VectorXd b_;
  double kappa1_;
  double lipschitz_;
};

SparseMatrix make_metric(MetricKind kind, Eigen::Index n, std::mt19937_64& rng) {
  SparseMatrix m(n, n);
  if (kind == MetricKind::identity) {
    m.setIdentity();
    return m;
  }
  std::uniform_real_distribution<double> jitter(0.0, 0.5);
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, 1.0 + jitter(rng));
    if (i + 1 < n) {
      triplets.emplace_back(i, i + 1, -0.25);
      triplets.emplace_back(i + 1, i, -0.25);
    }
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

double generalized_power_iteration(const SparseMatrix& A, const hilbert::InnerProduct& ip,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(A.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);

  double estimate = 0.0;
  for (int it = 0; it < 20000; ++it) {
    const Eigen::VectorXd av = A * v;
    const double rayleigh = v.dot(av) / v.dot(ip.matrix() * v);
    Eigen::VectorXd w = ip.solve(av);
    w /= std::sqrt(w.dot(ip.matrix() * w));
    v = std::move(w);
    if (it > 50 && std::abs(rayleigh - estimate) <= 1e-15 * std::abs(rayleigh)) return rayleigh;
    estimate = rayleigh;
  }
  return estimate;
}

QuadraticL1Instance make_quadratic_problem(SparseMatrix A, Eigen::VectorXd b,
                                           Eigen::VectorXd c_weights, double kappa1, double kappa2,
                                           std::shared_ptr<const hilbert::InnerProduct> ip) {
  if (A.rows() != ip->size() || b.size() != ip->size() || c_weights.size() != ip->size()) {
    throw SizeMismatch("quadratic problem data do not match the inner product size");
  }
  if (!(kappa1 + kappa2 > 0.0)) throw ConfigError("quadratic+l1 family needs kappa1 + kappa2 > 0");
  QuadraticL1Instance inst;
  A.makeCompressed();
  inst.A = A;
  inst.b = b;
  inst.kappa1 = kappa1;
  inst.kappa2 = kappa2;
  inst.lipschitz = generalized_power_iteration(inst.A, *ip);
  inst.problem.smooth =
      std::make_shared<QuadraticSmooth>(std::move(A), std::move(b), kappa1, inst.lipschitz);
  inst.problem.nonsmooth = NonsmoothPart(std::move(c_weights), kappa2);
  inst.problem.ip = std::move(ip);
  inst.problem.validate();
  return inst;
}

QuadraticL1Instance make_quadratic_l1(const QuadraticL1Options& o) {
  if (o.n <= 0) throw ConfigError("quadratic+l1 family needs n > 0");
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal;

  auto ip = std::make_shared<const hilbert::InnerProduct>(make_metric(o.metric, o.n, rng));

  Eigen::MatrixXd G(o.n, o.n);
  for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = normal(rng);
  G *= o.coupling / std::sqrt(static_cast<double>(o.n));
  const Eigen::MatrixXd gram = G.transpose() * G;

  SparseMatrix A = o.kappa1 * ip->matrix();
  if (o.coupling != 0.0) A += gram.sparseView();

  Eigen::VectorXd b(o.n);
  for (Eigen::Index i = 0; i < o.n; ++i) b[i] = o.rhs_scale * normal(rng);

  Eigen::VectorXd c = o.c_weights.size() == 0 ? Eigen::VectorXd::Constant(o.n, o.c_scale)
                                               : o.c_weights;
  return make_quadratic_problem(std::move(A), std::move(b), std::move(c), o.kappa1, o.kappa2,
                                std::move(ip));
}

}  // namespace semiprox::problems
