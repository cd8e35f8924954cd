#pragma once

#include <memory>

#include "semiprox/hilbert.hpp"
#include "semiprox/objective.hpp"

namespace semiprox::problems {

/// Coefficients of
///   F(u) = int 1/2|grad u|^2 + alpha max(|grad u| - 1, 0)^2 + beta u^3 + c|u| + rho u
/// over the unit square with homogeneous Dirichlet data.
struct ToyProblemParams {
  double alpha = 0.0;
  double beta = 40.0;
  double c = 80.0;
  double rho = -100.0;
  int refinement_level = 4;

  void validate() const;
};

/// Gradient terms use one-point quadrature per element (exact for P1),
/// the u^3, rho u and c|u| terms vertex-lumped quadrature, which makes g
/// separable. The Newton derivative of the max term takes the branch
/// |grad u| > 1 on the kink.
CompositeProblem make_toy_problem(const ToyProblemParams& params,
                                  std::shared_ptr<const hilbert::Mesh> mesh,
                                  std::shared_ptr<const hilbert::InnerProduct> ip);

/// Builds mesh and H^1 inner product for params.refinement_level.
CompositeProblem make_toy_problem(const ToyProblemParams& params);

}  // namespace semiprox::problems
