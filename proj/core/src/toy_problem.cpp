#include "semiprox/problems/toy.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace semiprox::problems {
namespace {

struct Element {
  std::array<int, 3> dofs;  // -1 on the boundary
  double area;
  std::array<Eigen::Vector2d, 3> grads;
};

double positive_part(double s) { return s > 0.0 ? s : 0.0; }

/// Smooth part of the toy functional, assembled element by element.
class ToyEnergy final : public SmoothPart {
 public:
  ToyEnergy(const ToyProblemParams& params, const hilbert::Mesh& mesh)
      : params_(params), n_(mesh.num_dofs()), weights_(mesh.lumped_weights()) {
    elements_.reserve(mesh.elements().size());
    for (const hilbert::Triangle& t : mesh.elements()) {
      Element e;
      for (int a = 0; a < 3; ++a) e.dofs[a] = mesh.dof(t.nodes[a]);
      e.area = t.area;
      e.grads = t.basis_gradients;
      elements_.push_back(e);
    }
  }

  Eigen::Index size() const override { return n_; }

  double value(const PrimalVector& x) const override {
    double total = 0.0;
    for (const Element& e : elements_) {
      const Eigen::Vector2d g = gradient_of(e, x);
      const double norm = g.norm();
      const double excess = positive_part(norm - 1.0);
      total += e.area * (0.5 * g.squaredNorm() + params_.alpha * excess * excess);
    }
    const Eigen::ArrayXd u = x.values().array();
    total += (weights_.array() * (params_.beta * u.cube() + params_.rho * u)).sum();
    return total;
  }

  DualVector gradient(const PrimalVector& x) const override {
    const Eigen::ArrayXd u = x.values().array();
    Eigen::VectorXd out = weights_.array() * (3.0 * params_.beta * u.square() + params_.rho);
    for (const Element& e : elements_) {
      const Eigen::Vector2d g = gradient_of(e, x);
      Eigen::Vector2d flux = g;
      const double norm = g.norm();
      if (params_.alpha != 0.0 && norm > 1.0) flux += 2.0 * params_.alpha * (norm - 1.0) / norm * g;
      for (int a = 0; a < 3; ++a)
        if (e.dofs[a] >= 0) out[e.dofs[a]] += e.area * e.grads[a].dot(flux);
    }
    return DualVector(std::move(out));
  }

  SecondOrderForm second_order(const PrimalVector& x) const override {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(elements_.size() * 9 + static_cast<std::size_t>(n_));
    for (const Element& e : elements_) {
      const Eigen::Matrix2d d = flux_derivative(gradient_of(e, x));
      for (int a = 0; a < 3; ++a) {
        if (e.dofs[a] < 0) continue;
        const Eigen::Vector2d dg = d * e.grads[a];
        for (int b = 0; b < 3; ++b) {
          if (e.dofs[b] < 0) continue;
          triplets.emplace_back(e.dofs[b], e.dofs[a], e.area * e.grads[b].dot(dg));
        }
      }
    }
    if (params_.beta != 0.0) {
      for (Eigen::Index i = 0; i < n_; ++i)
        triplets.emplace_back(i, i, 6.0 * params_.beta * weights_[i] * x[i]);
    }
    SparseMatrix h(n_, n_);
    h.setFromTriplets(triplets.begin(), triplets.end());
    return SecondOrderForm(std::move(h));
  }

  double difference(const PrimalVector& x, const PrimalVector& dx) const override {
    double total = 0.0;
    for (const Element& e : elements_) {
      const Eigen::Vector2d g = gradient_of(e, x);
      const Eigen::Vector2d d = gradient_of(e, dx);
      double change = g.dot(d) + 0.5 * d.squaredNorm();
      if (params_.alpha != 0.0) change += params_.alpha * max_term_change(g, d);
      total += e.area * change;
    }
    const Eigen::ArrayXd u = x.values().array();
    const Eigen::ArrayXd du = dx.values().array();
    total += (weights_.array() *
              du * (params_.beta * (3.0 * u.square() + 3.0 * u * du + du.square()) + params_.rho))
                 .sum();
    return total;
  }

 private:
  Eigen::Vector2d gradient_of(const Element& e, const PrimalVector& x) const {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (int a = 0; a < 3; ++a)
      if (e.dofs[a] >= 0) g += x[e.dofs[a]] * e.grads[a];
    return g;
  }

  /// D(flux)/D(grad u) = I + 2 alpha [ (|g|-1)_+/|g| (I - n n^T) + 1_{|g|>=1} n n^T ].
  Eigen::Matrix2d flux_derivative(const Eigen::Vector2d& g) const {
    Eigen::Matrix2d d = Eigen::Matrix2d::Identity();
    const double norm = g.norm();
    if (params_.alpha == 0.0 || norm < 1.0) return d;
    const Eigen::Vector2d n = g / norm;
    const Eigen::Matrix2d nn = n * n.transpose();
    d += 2.0 * params_.alpha * ((norm - 1.0) / norm * (Eigen::Matrix2d::Identity() - nn) + nn);
    return d;
  }

  /// max(|g+d|-1,0)^2 - max(|g|-1,0)^2 without cancellation when both
  /// points are on the active branch.
  static double max_term_change(const Eigen::Vector2d& g, const Eigen::Vector2d& d) {
    const double before = g.norm();
    const double after = (g + d).norm();
    if (before <= 1.0 && after <= 1.0) return 0.0;
    if (before > 1.0 && after > 1.0) {
      const double norm_change = (2.0 * g.dot(d) + d.squaredNorm()) / (after + before);
      return norm_change * (after + before - 2.0);
    }
    const double ea = positive_part(after - 1.0);
    const double eb = positive_part(before - 1.0);
    return ea * ea - eb * eb;
  }

  ToyProblemParams params_;
  Eigen::Index n_;
  Eigen::VectorXd weights_;
  std::vector<Element> elements_;
};

}  // namespace

void ToyProblemParams::validate() const {
  if (!(c > 0.0)) throw ConfigError("toy problem requires c > 0");
  if (!(alpha >= 0.0)) throw ConfigError("toy problem requires alpha >= 0");
  if (refinement_level < 1) throw ConfigError("refinement level must be at least 1");
}

CompositeProblem make_toy_problem(const ToyProblemParams& params,
                                  std::shared_ptr<const hilbert::Mesh> mesh,
                                  std::shared_ptr<const hilbert::InnerProduct> ip) {
  params.validate();
  CompositeProblem p;
  p.smooth = std::make_shared<ToyEnergy>(params, *mesh);
  p.nonsmooth = NonsmoothPart(params.c * mesh->lumped_weights());
  p.ip = std::move(ip);
  p.validate();
  return p;
}

CompositeProblem make_toy_problem(const ToyProblemParams& params) {
  params.validate();
  auto mesh = std::make_shared<const hilbert::Mesh>(params.refinement_level);
  auto ip = std::make_shared<const hilbert::InnerProduct>(hilbert::assemble_inner_product(*mesh));
  return make_toy_problem(params, mesh, ip);
}

}  // namespace semiprox::problems
