#include "semiprox/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace semiprox::hilbert {
namespace {

using Triplet = Eigen::Triplet<double>;

template <class ElementMatrix>
SparseMatrix assemble(const Mesh& mesh, ElementMatrix&& element_matrix) {
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.elements().size() * 9);
  for (const Triangle& t : mesh.elements()) {
    const Eigen::Matrix3d local = element_matrix(t);
    for (int a = 0; a < 3; ++a) {
      const int row = mesh.dof(t.nodes[a]);
      if (row < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int col = mesh.dof(t.nodes[b]);
        if (col < 0) continue;
        triplets.emplace_back(row, col, local(a, b));
      }
    }
  }
  SparseMatrix m(mesh.num_dofs(), mesh.num_dofs());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

void require_size(Eigen::Index got, const InnerProduct& ip) {
  if (got != ip.size()) {
    throw SizeMismatch("vector of size " + std::to_string(got) + " against inner product of size " +
                       std::to_string(ip.size()));
  }
}

double checked_sqrt(double radicand) {
  if (radicand < -1e-12) {
    throw std::logic_error("negative squared norm " + std::to_string(radicand) +
                           ": inner product matrix is not positive definite");
  }
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

InnerProduct::InnerProduct(SparseMatrix gram) : matrix_(std::move(gram)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw SizeMismatch("inner product matrix must be square");
  }
  matrix_.makeCompressed();
  auto factor = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(matrix_);
  if (factor->info() != Eigen::Success || (matrix_.rows() > 0 && factor->vectorD().minCoeff() <= 0.0)) {
    throw InvalidMesh("inner product matrix is not symmetric positive definite");
  }
  factor_ = std::move(factor);
}

InnerProduct InnerProduct::identity(Eigen::Index n) {
  SparseMatrix eye(n, n);
  eye.setIdentity();
  return InnerProduct(std::move(eye));
}

Eigen::VectorXd InnerProduct::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != size()) {
    throw SizeMismatch("right-hand side does not match inner product size");
  }
  return factor_->solve(rhs);
}

SparseMatrix assemble_stiffness(const Mesh& mesh) {
  return assemble(mesh, [](const Triangle& t) {
    Eigen::Matrix3d k;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        k(a, b) = t.area * t.basis_gradients[a].dot(t.basis_gradients[b]);
    return k;
  });
}

SparseMatrix assemble_mass(const Mesh& mesh) {
  return assemble(mesh, [](const Triangle& t) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Constant(1.0);
    m.diagonal().setConstant(2.0);
    return Eigen::Matrix3d(m * (t.area / 12.0));
  });
}

InnerProduct assemble_inner_product(const Mesh& mesh) {
  SparseMatrix gram = assemble_stiffness(mesh) + assemble_mass(mesh);
  return InnerProduct(std::move(gram));
}

DualVector riesz(const PrimalVector& v, const InnerProduct& ip) {
  require_size(v.size(), ip);
  return DualVector(Eigen::VectorXd(ip.matrix() * v.values()));
}

PrimalVector riesz_inv(const DualVector& phi, const InnerProduct& ip) {
  require_size(phi.size(), ip);
  return PrimalVector(ip.solve(phi.values()));
}

double inner(const PrimalVector& u, const PrimalVector& v, const InnerProduct& ip) {
  require_size(u.size(), ip);
  require_size(v.size(), ip);
  return u.values().dot(ip.matrix() * v.values());
}

double norm_primal(const PrimalVector& v, const InnerProduct& ip) {
  return checked_sqrt(inner(v, v, ip));
}

double norm_dual(const DualVector& phi, const InnerProduct& ip) {
  require_size(phi.size(), ip);
  return checked_sqrt(phi.values().dot(ip.solve(phi.values())));
}

}  // namespace semiprox::hilbert
