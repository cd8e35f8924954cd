#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "semiprox/vectors.hpp"

namespace semiprox::hilbert {

/// P1 triangle with precomputed area and constant barycentric gradients.
struct Triangle {
  std::array<int, 3> nodes;
  double area = 0.0;
  std::array<Eigen::Vector2d, 3> basis_gradients;
};

/// Uniform right-angled triangulation of the unit square. Level L has
/// 2^L cells per side, each split along its SW-NE diagonal. Boundary nodes
/// carry homogeneous Dirichlet data and are not degrees of freedom.
class Mesh {
 public:
  explicit Mesh(int refinement_level);

  int refinement_level() const { return level_; }
  int cells_per_side() const { return cells_; }
  double h() const { return 1.0 / cells_; }

  std::span<const Eigen::Vector2d> nodes() const { return nodes_; }
  std::span<const Triangle> elements() const { return elements_; }

  /// Degree-of-freedom index of a node, -1 on the boundary.
  int dof(int node) const { return dof_of_node_[node]; }
  /// Node id of every degree of freedom, in dof order.
  std::span<const int> dof_nodes() const { return dof_nodes_; }
  Eigen::Index num_dofs() const { return static_cast<Eigen::Index>(dof_nodes_.size()); }

  /// Vertex-lumped quadrature weights (one third of the area of every
  /// adjacent triangle), per degree of freedom.
  const Eigen::VectorXd& lumped_weights() const { return lumped_; }

  /// Nodal interpolant restricted to interior nodes.
  PrimalVector interpolate(const std::function<double(double, double)>& u) const;

 private:
  int level_;
  int cells_;
  std::vector<Eigen::Vector2d> nodes_;
  std::vector<Triangle> elements_;
  std::vector<int> dof_of_node_;
  std::vector<int> dof_nodes_;
  Eigen::VectorXd lumped_;
};

}  // namespace semiprox::hilbert
