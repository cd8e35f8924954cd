#include "semiprox/subsolver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <string>

namespace semiprox {
namespace {

/// H + q M, i.e. the subproblem with the quadratic part of g moved into the
/// operator so that only the separable kernel w_i |y_i| remains nonsmooth.
class FoldedProblem {
 public:
  explicit FoldedProblem(const ProxSubproblem& sp) : w_(sp.g.l1_weights()), phi_(sp.rhs.values()) {
    const Eigen::Index n = sp.op.size();
    if (sp.rhs.size() != n || sp.g.size() != n || sp.ip.size() != n) {
      throw SizeMismatch("prox subproblem parts have inconsistent sizes");
    }
    if (sp.g.quadratic_weight() != 0.0) {
      owned_ = sp.op.matrix() + sp.g.quadratic_weight() * sp.ip.matrix();
      owned_.makeCompressed();
      a_ = &owned_;
    } else {
      a_ = &sp.op.matrix();
    }
    diag_ = a_->diagonal();
  }

  Eigen::Index size() const { return phi_.size(); }
  const SparseMatrix& a() const { return *a_; }
  const Eigen::VectorXd& diag() const { return diag_; }
  const Eigen::VectorXd& w() const { return w_; }
  const Eigen::VectorXd& phi() const { return phi_; }

  double objective(const Eigen::VectorXd& y, const Eigen::VectorXd& ay) const {
    return w_.dot(y.cwiseAbs()) + 0.5 * y.dot(ay) - phi_.dot(y);
  }

  /// One nonsmooth Gauss-Seidel sweep; every scalar problem
  ///   1/2 a_ii t^2 - b t + w_i |t|
  /// is minimized exactly by soft thresholding. Keeps `ay` = A y current.
  /// Returns the objective decrease, summed from the exact scalar changes.
  double sweep(Eigen::VectorXd& y, Eigen::VectorXd& ay) const {
    double decrease = 0.0;
    for (Eigen::Index i = 0; i < size(); ++i) {
      const double aii = diag_[i];
      if (!(aii > 0.0)) {
        throw SubproblemError(SubproblemError::Kind::nonconvex,
                              "scalar subproblem " + std::to_string(i) +
                                  " has non-positive curvature " + std::to_string(aii));
      }
      const double b = phi_[i] - ay[i] + aii * y[i];
      const double z = soft_threshold(b, w_[i]) / aii;
      const double d = z - y[i];
      if (d == 0.0) continue;
      decrease -= w_[i] * (std::abs(z) - std::abs(y[i])) - (phi_[i] - ay[i]) * d + 0.5 * aii * d * d;
      for (SparseMatrix::InnerIterator it(*a_, i); it; ++it) ay[it.row()] += it.value() * d;
      y[i] = z;
    }
    return decrease;
  }

  static double soft_threshold(double b, double c) {
    if (b > c) return b - c;
    if (b < -c) return b + c;
    return 0.0;
  }

 private:
  SparseMatrix owned_;
  const SparseMatrix* a_ = nullptr;
  Eigen::VectorXd diag_;
  const Eigen::VectorXd& w_;
  const Eigen::VectorXd& phi_;
};

/// Newton correction on the coordinates away from the kink of |.|.
Eigen::VectorXd reduced_newton_direction(const FoldedProblem& fp, const Eigen::VectorXd& y,
                                         const Eigen::VectorXd& ay) {
  const Eigen::Index n = fp.size();
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::vector<Eigen::Index> free;
  free.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (y[i] != 0.0) {
      position[static_cast<std::size_t>(i)] = static_cast<int>(free.size());
      free.push_back(i);
    }
  }
  Eigen::VectorXd direction = Eigen::VectorXd::Zero(n);
  if (free.empty()) return direction;

  const auto m = static_cast<Eigen::Index>(free.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(fp.a().nonZeros()));
  Eigen::VectorXd gradient(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index col = free[static_cast<std::size_t>(k)];
    for (SparseMatrix::InnerIterator it(fp.a(), col); it; ++it) {
      const int row = position[static_cast<std::size_t>(it.row())];
      if (row >= 0) triplets.emplace_back(row, k, it.value());
    }
    gradient[k] = ay[col] - fp.phi()[col] + fp.w()[col] * (y[col] > 0.0 ? 1.0 : -1.0);
  }
  SparseMatrix reduced(m, m);
  reduced.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(reduced);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 0.0) {
    throw SubproblemError(SubproblemError::Kind::nonconvex,
                          "reduced Newton system is not positive definite");
  }
  const Eigen::VectorXd reduced_step = ldlt.solve(-gradient);
  for (Eigen::Index k = 0; k < m; ++k) direction[free[static_cast<std::size_t>(k)]] = reduced_step[k];
  return direction;
}

/// Halving search for strict decrease of the full objective along d.
/// Returns the decrease achieved, or 0 (y untouched) if 30 halvings fail.
double backtrack(const FoldedProblem& fp, const Eigen::VectorXd& direction, double shrink,
                 Eigen::VectorXd& y, Eigen::VectorXd& ay) {
  if (direction.isZero(0.0)) return 0.0;
  const Eigen::VectorXd a_d = fp.a() * direction;
  const double linear = direction.dot(ay) - fp.phi().dot(direction);
  const double curvature = direction.dot(a_d);
  double step = 1.0;
  for (int attempt = 0; attempt <= 30; ++attempt, step *= shrink) {
    double change = step * linear + 0.5 * step * step * curvature;
    for (Eigen::Index i = 0; i < fp.size(); ++i) {
      if (direction[i] != 0.0 && fp.w()[i] != 0.0)
        change += fp.w()[i] * (std::abs(y[i] + step * direction[i]) - std::abs(y[i]));
    }
    if (change < 0.0) {
      y += step * direction;
      ay += step * a_d;
      return -change;
    }
  }
  return 0.0;
}

}  // namespace

void SubsolverConfig::validate() const {
  if (!(energy_tol > 0.0) || !(correction_tol > 0.0) || max_cycles <= 0) {
    throw ConfigError("subsolver tolerances and cycle limit must be positive");
  }
  if (!(line_search_shrink > 0.0 && line_search_shrink < 1.0)) {
    throw ConfigError("line search shrink factor must lie in (0, 1)");
  }
}

double prox_objective(const ProxSubproblem& sp, const PrimalVector& y) {
  const FoldedProblem fp(sp);
  return fp.objective(y.values(), fp.a() * y.values());
}

double first_order_residual(const ProxSubproblem& sp, const PrimalVector& y) {
  const FoldedProblem fp(sp);
  const Eigen::VectorXd r = fp.phi() - fp.a() * y.values();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < fp.size(); ++i) {
    const double violation = y[i] != 0.0 ? std::abs(r[i] - fp.w()[i] * (y[i] > 0.0 ? 1.0 : -1.0))
                                         : std::max(std::abs(r[i]) - fp.w()[i], 0.0);
    worst = std::max(worst, violation);
  }
  return worst;
}

ProxResult solve_scaled_prox(const ProxSubproblem& sp, const PrimalVector& start,
                             const SubsolverConfig& cfg) {
  cfg.validate();
  const FoldedProblem fp(sp);
  if (start.size() != fp.size()) throw SizeMismatch("prox start vector of wrong size");

  ProxResult result;
  Eigen::VectorXd y = start.values();
  Eigen::VectorXd ay = fp.a() * y;
  double objective = fp.objective(y, ay);
  result.objective_trace.push_back(objective);

  for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
    const Eigen::VectorXd previous = y;

    // Decrease tracked from the exact scalar and line search increments;
    // near the solution it is far below the rounding error of J itself.
    double decrease = fp.sweep(y, ay);
    const Eigen::VectorXd direction = reduced_newton_direction(fp, y, ay);
    decrease += backtrack(fp, direction, cfg.line_search_shrink, y, ay);
    ay = fp.a() * y;
    objective -= decrease;
    result.objective_trace.push_back(objective);

    const Eigen::VectorXd correction = y - previous;
    result.last_correction = std::sqrt(std::max(correction.dot(sp.ip.matrix() * correction), 0.0));
    result.cycles = cycle;
    if (decrease <= cfg.energy_tol * (1.0 + std::abs(objective)) &&
        result.last_correction <= cfg.correction_tol) {
      result.y = PrimalVector(std::move(y));
      return result;
    }
  }
  throw SubproblemError(SubproblemError::Kind::no_convergence,
                        "prox subsolver did not converge in " + std::to_string(cfg.max_cycles) +
                            " cycles");
}

PrimalVector scaled_prox(const ProxSubproblem& sp, const SubsolverConfig& cfg) {
  return solve_scaled_prox(sp, PrimalVector(sp.op.size()), cfg).y;
}

PrimalVector scaled_prox_reference(const ProxSubproblem& sp, double tight_tol) {
  const FoldedProblem fp(sp);
  if (fp.size() > 5000) {
    throw std::invalid_argument("reference prox solver is limited to n <= 5000");
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(fp.size());
  Eigen::VectorXd ay = Eigen::VectorXd::Zero(fp.size());
  constexpr long kMaxSweeps = 1'000'000;
  for (long sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double decrease = fp.sweep(y, ay);
    if (sweep % 64 == 63) ay = fp.a() * y;
    if (decrease <= tight_tol) return PrimalVector(std::move(y));
  }
  throw SubproblemError(SubproblemError::Kind::iteration_cap,
                        "reference prox solver hit the sweep cap");
}

}  // namespace semiprox
