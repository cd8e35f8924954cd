#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "semiprox/hilbert.hpp"
#include "semiprox/mesh.hpp"

using namespace semiprox;

namespace {

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("level 1 mesh has one interior node with hand-assembled entries") {
  const hilbert::Mesh mesh(1);
  REQUIRE(mesh.num_dofs() == 1);
  CHECK(mesh.elements().size() == 8);
  // Six triangles of area 1/8 touch the centre: the three-point stencil of
  // every right triangle adds up to the 5-point Laplacian, and each
  // consistent mass diagonal contributes area / 6.
  const SparseMatrix k = hilbert::assemble_stiffness(mesh);
  const SparseMatrix m = hilbert::assemble_mass(mesh);
  CHECK(k.coeff(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(m.coeff(0, 0) == doctest::Approx(6.0 * (1.0 / 8.0) / 6.0).epsilon(1e-14));
  const hilbert::InnerProduct ip = hilbert::assemble_inner_product(mesh);
  CHECK(ip.matrix().coeff(0, 0) == doctest::Approx(4.125));
}

TEST_CASE("stiffness matches the five-point stencil in the interior") {
  const hilbert::Mesh mesh(3);
  const SparseMatrix k = hilbert::assemble_stiffness(mesh);
  const int n = mesh.cells_per_side() - 1;
  // dof ordering is row-major over interior nodes
  const int centre = (n / 2) * n + n / 2;
  CHECK(k.coeff(centre, centre) == doctest::Approx(4.0));
  CHECK(k.coeff(centre, centre + 1) == doctest::Approx(-1.0));
  CHECK(k.coeff(centre, centre + n) == doctest::Approx(-1.0));
  CHECK(k.coeff(centre, centre + n + 1) == doctest::Approx(0.0));
  CHECK(k.coeff(centre, centre - n + 1) == doctest::Approx(0.0));
}

TEST_CASE("every interior lumped weight equals h^2") {
  for (int level = 1; level <= 5; ++level) {
    const hilbert::Mesh mesh(level);
    const double h = mesh.h();
    CHECK(mesh.lumped_weights().sum() == doctest::Approx(std::pow(1.0 - h, 2)));
    for (Eigen::Index i = 0; i < mesh.num_dofs(); ++i)
      CHECK(mesh.lumped_weights()[i] == doctest::Approx(h * h));
  }
}

TEST_CASE("Riesz map is an isometry between primal and dual norms") {
  std::mt19937_64 rng(11);
  const hilbert::InnerProduct ip = hilbert::assemble_inner_product(hilbert::Mesh(3));
  for (int s = 0; s < 1000; ++s) {
    const PrimalVector v(random_vector(ip.size(), rng));
    const double nv = hilbert::norm_primal(v, ip);
    CHECK(std::abs(hilbert::norm_dual(hilbert::riesz(v, ip), ip) - nv) <= 1e-9 * nv);
  }
  const PrimalVector v(random_vector(ip.size(), rng));
  const PrimalVector back = hilbert::riesz_inv(hilbert::riesz(v, ip), ip);
  CHECK((back - v).values().norm() <= 1e-12 * v.values().norm());
}

TEST_CASE("inner product matrix is SPD up to level 5") {
  for (int level = 1; level <= 5; ++level) {
    const hilbert::Mesh mesh(level);
    const hilbert::InnerProduct ip = hilbert::assemble_inner_product(mesh);
    if (level <= 3) {
      const Eigen::MatrixXd dense(ip.matrix());
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("stiffness energy of an interpolant converges under refinement") {
  // u = sin(pi x) sin(pi y): integral of |grad u|^2 is pi^2 / 2.
  const double exact = std::numbers::pi * std::numbers::pi / 2.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int level = 2; level <= 4; ++level) {
    const hilbert::Mesh mesh(level);
    const PrimalVector u = mesh.interpolate([](double x, double y) {
      return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
    });
    const double energy = u.values().dot(hilbert::assemble_stiffness(mesh) * u.values());
    const double error = std::abs(energy - exact);
    CHECK(error < previous);
    previous = error;
  }
}

TEST_CASE("mass of the single level 1 hat function") {
  const hilbert::Mesh mesh(1);
  const PrimalVector hat = mesh.interpolate([](double x, double y) {
    return (x == 0.5 && y == 0.5) ? 1.0 : 0.0;
  });
  const double mass = hat.values().dot(hilbert::assemble_mass(mesh) * hat.values());
  // squared hat over six triangles of area 1/8: each gives area / 6
  CHECK(mass == doctest::Approx(0.125));
}

TEST_CASE("invalid levels and size mismatches are rejected") {
  CHECK_THROWS_AS(hilbert::Mesh(0), InvalidMesh);
  CHECK_THROWS_AS(hilbert::Mesh(13), InvalidMesh);
  const hilbert::InnerProduct ip = hilbert::InnerProduct::identity(3);
  CHECK_THROWS_AS(hilbert::norm_primal(PrimalVector::zero(2), ip), SizeMismatch);
  CHECK_THROWS_AS(PrimalVector::zero(2) + PrimalVector::zero(3), SizeMismatch);
  SparseMatrix bad(2, 2);
  bad.insert(0, 0) = 1.0;
  bad.insert(1, 1) = -1.0;
  CHECK_THROWS_AS(hilbert::InnerProduct{bad}, InvalidMesh);
}

TEST_CASE("duality pairing of riesz(u) and v is the inner product") {
  std::mt19937_64 rng(3);
  const hilbert::InnerProduct ip = hilbert::assemble_inner_product(hilbert::Mesh(2));
  const PrimalVector u(random_vector(ip.size(), rng));
  const PrimalVector v(random_vector(ip.size(), rng));
  CHECK(apply(hilbert::riesz(u, ip), v) == doctest::Approx(hilbert::inner(u, v, ip)));
  CHECK(hilbert::inner(u, v, ip) == doctest::Approx(hilbert::inner(v, u, ip)));
}
