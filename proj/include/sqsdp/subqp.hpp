#pragma once

#include <vector>

#include "sqsdp/errors.hpp"
#include "sqsdp/model.hpp"

namespace sqsdp {

/**
 * Data of the stabilized quadratic SDP subproblem
 *
 *   minimize_{ξ, Σ}  ⟨c, ξ⟩ + ½⟨Mξ, ξ⟩ + (σ/2)‖Σ‖²_F
 *   subject to       A(x)ξ + σ(Σ − T) ⪰ 0,
 *
 * with c = ∇f(x) − ∇g(x)s, s = y − g(x)/σ, T = Z − X(x)/σ and
 * M = H + ∇g(x)∇g(x)ᵀ/σ ≻ 0.
 */
struct SubproblemData {
  Vector c;
  Matrix M;
  double sigma = 1.0;
  SymmetricMatrix T;
  std::vector<SymmetricMatrix> A;
  Vector s;
  Vector g_x;
  Matrix jac_g;
  /// Current conic multiplier Z_k (only used by descent_check).
  SymmetricMatrix Z;
};

/// Assembles the subproblem at iterate (x, y, Z) with Hessian (approximation) H.
SubproblemData build_subproblem(const PointEvaluation& ev, const Vector& y,
                                const SymmetricMatrix& z, double sigma, const Matrix& h);

struct ReducedObjective {
  double value = 0.0;
  Vector grad;
};

/**
 * θ(ξ) = ⟨c, ξ⟩ + ½⟨Mξ, ξ⟩ + (σ/2)‖[T − A(x)ξ/σ]_+‖²_F, the subproblem with
 * Σ eliminated, and ∇θ(ξ) = c + Mξ − A*(x)[T − A(x)ξ/σ]_+.
 */
ReducedObjective reduced_objective(const SubproblemData& data, const Vector& xi);

/// Objective of the joint (ξ, Σ) problem; does not check feasibility.
double subproblem_objective(const SubproblemData& data, const Vector& xi,
                            const SymmetricMatrix& sigma_mat);

struct SubproblemOptions {
  double tol = 1e-10;
  int max_iter = 100;
};

struct SubproblemSolution {
  Vector xi;
  SymmetricMatrix Sigma;
  Vector y_trial;
  SymmetricMatrix Z_trial;
  /// ‖∇θ(ξ)‖ = ‖c + Mξ − A*(x)Σ‖.
  double kkt_residual = 0.0;
  double objective = 0.0;
  int newton_iters = 0;
};

/// Residuals of the joint problem's optimality conditions at a solution.
struct SubproblemResiduals {
  /// ‖Σ − [T − A(x)ξ/σ]_+‖_F
  double projection = 0.0;
  /// max(0, −λ_min(A(x)ξ + σ(Σ − T)))
  double slack_violation = 0.0;
  /// |⟨Σ, A(x)ξ + σ(Σ − T)⟩|
  double complementarity = 0.0;
  /// ‖c + Mξ − A*(x)Σ‖
  double stationarity = 0.0;
};

SubproblemResiduals subproblem_residuals(const SubproblemData& data, const SubproblemSolution& sol);

/// Thrown when the inner Newton iteration does not reach the tolerance.
class SubproblemNonconvergence : public NumericalError {
 public:
  SubproblemNonconvergence(const std::string& what, SubproblemSolution best)
      : NumericalError(what), best_(std::move(best)) {}
  const SubproblemSolution& best() const { return best_; }

 private:
  SubproblemSolution best_;
};

/**
 * Semismooth Newton on ∇θ(ξ) = 0 with the generalized Jacobian
 * M + A*(x) ∘ D[·]_+(W) ∘ A(x) / σ, W = T − A(x)ξ/σ, damped by an Armijo
 * rule on θ. Falls back to −∇θ when the Newton step is not a descent
 * direction.
 *
 * Converged when ‖∇θ‖ ≤ tol · max(1, ‖c‖, ‖Mξ‖, ‖A*(x)Σ‖), or when ‖∇θ‖
 * is below its own rounding level 8·eps·(‖c‖ + ‖M‖‖ξ‖ + ‖A‖‖W‖). Steps that
 * leave θ unchanged up to rounding are accepted if they shrink ‖∇θ‖. Throws
 * ConfigurationError if M is not positive definite and
 * SubproblemNonconvergence when max_iter is exhausted.
 */
SubproblemSolution solve_subproblem(const SubproblemData& data, const SubproblemOptions& opts = {});

struct DescentCheck {
  bool passed = false;
  /// ⟨∇F, ξ⟩
  double lhs = 0.0;
  /// −⟨Mξ, ξ⟩ − σ‖Σ − Z‖²_F
  double rhs = 0.0;
  /// rhs + 1e-8·(1 + ‖ξ‖²) − lhs; non-negative iff passed.
  double slack = 0.0;
  /// Same slack with [T]_+ in place of Z. This form follows from firm
  /// nonexpansiveness of [·]_+ and holds whenever ∇θ(ξ) = 0.
  double slack_projected = 0.0;
};

/// Checks ⟨∇F, ξ⟩ ≤ −⟨Mξ, ξ⟩ − σ‖Σ − Z‖²_F up to 1e-8·(1 + ‖ξ‖²).
DescentCheck descent_check(const SubproblemData& data, const SubproblemSolution& sol,
                           const Vector& merit_gradient);

}  // namespace sqsdp
