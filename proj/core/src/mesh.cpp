#include "semiprox/mesh.hpp"

#include <string>

namespace semiprox::hilbert {
namespace {

Triangle make_triangle(const std::vector<Eigen::Vector2d>& nodes, int a, int b, int c) {
  Triangle t;
  t.nodes = {a, b, c};
  const Eigen::Vector2d& p0 = nodes[a];
  const Eigen::Vector2d& p1 = nodes[b];
  const Eigen::Vector2d& p2 = nodes[c];
  const double twice_area =
      (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  if (!(twice_area > 0.0)) {
    throw InvalidMesh("degenerate or clockwise triangle");
  }
  t.area = 0.5 * twice_area;
  const std::array<const Eigen::Vector2d*, 3> p = {&p0, &p1, &p2};
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d& pj = *p[(i + 1) % 3];
    const Eigen::Vector2d& pk = *p[(i + 2) % 3];
    t.basis_gradients[i] = Eigen::Vector2d(pj.y() - pk.y(), pk.x() - pj.x()) / twice_area;
  }
  return t;
}

}  // namespace

Mesh::Mesh(int refinement_level) : level_(refinement_level) {
  if (refinement_level < 1 || refinement_level > 12) {
    throw InvalidMesh("refinement level must lie in [1, 12], got " +
                      std::to_string(refinement_level));
  }
  cells_ = 1 << refinement_level;
  const int per_side = cells_ + 1;
  const double h = 1.0 / cells_;

  nodes_.reserve(static_cast<std::size_t>(per_side) * per_side);
  dof_of_node_.assign(static_cast<std::size_t>(per_side) * per_side, -1);
  for (int j = 0; j < per_side; ++j) {
    for (int i = 0; i < per_side; ++i) {
      const int id = static_cast<int>(nodes_.size());
      nodes_.emplace_back(i * h, j * h);
      if (i > 0 && j > 0 && i < cells_ && j < cells_) {
        dof_of_node_[id] = static_cast<int>(dof_nodes_.size());
        dof_nodes_.push_back(id);
      }
    }
  }

  elements_.reserve(2 * static_cast<std::size_t>(cells_) * cells_);
  for (int j = 0; j < cells_; ++j) {
    for (int i = 0; i < cells_; ++i) {
      const int sw = j * per_side + i;
      const int se = sw + 1;
      const int ne = sw + per_side + 1;
      const int nw = sw + per_side;
      elements_.push_back(make_triangle(nodes_, sw, se, ne));
      elements_.push_back(make_triangle(nodes_, sw, ne, nw));
    }
  }

  lumped_ = Eigen::VectorXd::Zero(num_dofs());
  for (const Triangle& t : elements_) {
    for (int node : t.nodes) {
      const int d = dof_of_node_[node];
      if (d >= 0) lumped_[d] += t.area / 3.0;
    }
  }
}

PrimalVector Mesh::interpolate(const std::function<double(double, double)>& u) const {
  PrimalVector v(num_dofs());
  for (Eigen::Index d = 0; d < num_dofs(); ++d) {
    const Eigen::Vector2d& p = nodes_[dof_nodes_[d]];
    v[d] = u(p.x(), p.y());
  }
  return v;
}

}  // namespace semiprox::hilbert
