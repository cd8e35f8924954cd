#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>

#include "semiprox/errors.hpp"

namespace semiprox {

/// Nodal coefficient vector tagged with the space it lives in. Primal and
/// dual vectors share storage layout but never mix arithmetically; the only
/// bridge between them is the duality pairing `apply` and the Riesz map.
template <class Space>
class Coefficients {
 public:
  Coefficients() = default;
  explicit Coefficients(Eigen::Index n) : values_(Eigen::VectorXd::Zero(n)) {}
  explicit Coefficients(Eigen::VectorXd values) : values_(std::move(values)) {}

  static Coefficients zero(Eigen::Index n) { return Coefficients(n); }

  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double operator[](Eigen::Index i) const { return values_[i]; }
  double& operator[](Eigen::Index i) { return values_[i]; }

  Coefficients& operator+=(const Coefficients& other) {
    require_same_size(other);
    values_ += other.values_;
    return *this;
  }
  Coefficients& operator-=(const Coefficients& other) {
    require_same_size(other);
    values_ -= other.values_;
    return *this;
  }
  Coefficients& operator*=(double s) {
    values_ *= s;
    return *this;
  }

  friend Coefficients operator+(Coefficients a, const Coefficients& b) { return a += b; }
  friend Coefficients operator-(Coefficients a, const Coefficients& b) { return a -= b; }
  friend Coefficients operator-(Coefficients a) {
    a.values_ = -a.values_;
    return a;
  }
  friend Coefficients operator*(double s, Coefficients a) { return a *= s; }
  friend Coefficients operator*(Coefficients a, double s) { return a *= s; }

  void require_same_size(const Coefficients& other) const {
    if (other.size() != size()) {
      throw SizeMismatch("coefficient vectors of size " + std::to_string(size()) + " and " +
                         std::to_string(other.size()));
    }
  }

 private:
  Eigen::VectorXd values_;
};

struct PrimalSpace {};
struct DualSpace {};

/// Element of the discretised space X.
using PrimalVector = Coefficients<PrimalSpace>;
/// Element of X*, acting on primal vectors through the plain dot product.
using DualVector = Coefficients<DualSpace>;

/// Duality pairing phi(v).
inline double apply(const DualVector& phi, const PrimalVector& v) {
  if (phi.size() != v.size()) {
    throw SizeMismatch("pairing of dual size " + std::to_string(phi.size()) +
                       " with primal size " + std::to_string(v.size()));
  }
  return phi.values().dot(v.values());
}

}  // namespace semiprox
