#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <memory>

#include "semiprox/mesh.hpp"
#include "semiprox/vectors.hpp"

namespace semiprox {

using SparseMatrix = Eigen::SparseMatrix<double>;

namespace hilbert {

/// SPD Gram matrix M of the discrete inner product together with its sparse
/// LDL^T factorization. Immutable; copies share the factorization, and
/// concurrent read-only use (including solves) is safe.
class InnerProduct {
 public:
  /// Factorizes `gram`; throws InvalidMesh if it is not symmetric positive
  /// definite.
  explicit InnerProduct(SparseMatrix gram);

  static InnerProduct identity(Eigen::Index n);

  Eigen::Index size() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }

  /// Solves M u = rhs with the stored factorization.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  SparseMatrix matrix_;
  std::shared_ptr<const Eigen::SimplicialLDLT<SparseMatrix>> factor_;
};

/// P1 stiffness matrix on interior nodes.
SparseMatrix assemble_stiffness(const Mesh& mesh);
/// Consistent P1 mass matrix on interior nodes.
SparseMatrix assemble_mass(const Mesh& mesh);

/// Full H^1 inner product: stiffness + mass.
InnerProduct assemble_inner_product(const Mesh& mesh);

DualVector riesz(const PrimalVector& v, const InnerProduct& ip);
PrimalVector riesz_inv(const DualVector& phi, const InnerProduct& ip);

double inner(const PrimalVector& u, const PrimalVector& v, const InnerProduct& ip);
double norm_primal(const PrimalVector& v, const InnerProduct& ip);
double norm_dual(const DualVector& phi, const InnerProduct& ip);

}  // namespace hilbert
}  // namespace semiprox
