#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sqsdp/symkernel.hpp"

namespace sqsdp {

/**
 * Oracle bundle for
 *
 *   minimize f(x)  subject to  g(x) = 0,  X(x) ⪰ 0,
 *
 * with x ∈ ℝⁿ, g: ℝⁿ → ℝᵐ (m may be zero) and X: ℝⁿ → Sᵈ.
 *
 * Oracles must be pure. eval_jac_g returns the transposed Jacobian ∇g(x)
 * (n×m, column i is ∇g_i(x)); eval_A(x, j) returns ∂X(x)/∂x_j for
 * j = 0, …, n−1. eval_hess_lagrangian is optional.
 */
struct NsdpProblem {
  std::string name;
  int n = 0;
  int m = 0;
  int d = 0;

  std::function<double(const Vector&)> eval_f;
  std::function<Vector(const Vector&)> eval_grad_f;
  std::function<Vector(const Vector&)> eval_g;
  std::function<Matrix(const Vector&)> eval_jac_g;
  std::function<SymmetricMatrix(const Vector&)> eval_X;
  std::function<SymmetricMatrix(const Vector&, int)> eval_A;
  std::function<Matrix(const Vector&, const Vector&, const SymmetricMatrix&)> eval_hess_lagrangian;
};

/// Equality and conic multipliers (y, Z).
struct MultiplierPair {
  Vector y;
  SymmetricMatrix Z;
};

/// Dimension-checked oracle calls.
double eval_f(const NsdpProblem& p, const Vector& x);
Vector eval_grad_f(const NsdpProblem& p, const Vector& x);
Vector eval_g(const NsdpProblem& p, const Vector& x);
Matrix eval_jac_g(const NsdpProblem& p, const Vector& x);
SymmetricMatrix eval_X(const NsdpProblem& p, const Vector& x);
std::vector<SymmetricMatrix> eval_A_all(const NsdpProblem& p, const Vector& x);

/// All first-order problem data at one point.
struct PointEvaluation {
  Vector x;
  double f = 0.0;
  Vector grad_f;
  Vector g;
  Matrix jac_g;
  SymmetricMatrix X = SymmetricMatrix::zero(1);
  std::vector<SymmetricMatrix> A;
};

PointEvaluation evaluate(const NsdpProblem& p, const Vector& x);

/// A(x)u = Σ_j u_j A_j(x).
SymmetricMatrix apply_A(const std::vector<SymmetricMatrix>& a_mats, const Vector& u);
SymmetricMatrix apply_A(const NsdpProblem& p, const Vector& x, const Vector& u);

/// A*(x)U = [⟨A_1(x), U⟩, …, ⟨A_n(x), U⟩]ᵀ.
Vector apply_A_adjoint(const std::vector<SymmetricMatrix>& a_mats, const SymmetricMatrix& u);
Vector apply_A_adjoint(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& u);

/// ∇ₓL(x, y, Z) = ∇f(x) − ∇g(x)y − A*(x)Z.
Vector lagrangian_grad(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z);
Vector lagrangian_grad(const NsdpProblem& p, const Vector& x, const Vector& y,
                       const SymmetricMatrix& z);

/// L(x, y, Z) = f(x) − ⟨g(x), y⟩ − ⟨X(x), Z⟩.
double lagrangian_value(const NsdpProblem& p, const Vector& x, const Vector& y,
                        const SymmetricMatrix& z);

/// How H_k is chosen and bounded.
struct HessianPolicy {
  /// Use eval_hess_lagrangian when the problem provides one.
  bool use_exact = true;
  /// Use the identity when no Hessian oracle is available (or use_exact is off).
  bool identity_fallback = true;
  /// Lower bound on λ_min(H + ∇g∇gᵀ/σ).
  double nu1 = 1e-8;
  /// Upper bound on λ_max(H).
  double nu2 = 1e8;
};

/**
 * Returns H with λ_min(H + ∇g∇gᵀ/σ) ≥ ν₁ and λ_max(H) ≤ ν₂.
 *
 * Eigenvalues of the raw matrix above ν₂ are clipped first; then H is
 * shifted by the smallest δI (δ ≥ 0, plus a rounding margin) reaching the
 * lower bound. If that shift would push λ_max(H) past ν₂, the spectrum of H
 * is clamped into [ν₁, ν₂] instead. Throws ConfigurationError if no Hessian
 * source is available.
 */
Matrix hessian_or_approx(const NsdpProblem& p, const Vector& x, const Vector& y,
                         const SymmetricMatrix& z, double sigma, const HessianPolicy& policy);

/// Same, with ∇g(x) supplied by the caller.
Matrix hessian_or_approx(const NsdpProblem& p, const Vector& x, const Vector& y,
                         const SymmetricMatrix& z, const Matrix& jac_g, double sigma,
                         const HessianPolicy& policy);

/// Result of comparing oracle derivatives against central differences.
struct DerivativeReport {
  double grad_f_error = 0.0;
  double jac_g_error = 0.0;
  double A_error = 0.0;
  double tolerance = 0.0;
  /// Human-readable descriptions of entries whose error exceeds the tolerance.
  std::vector<std::string> flagged;

  bool passed() const { return flagged.empty(); }
  double max_error() const;
};

/**
 * Central differences with step 1e-6·max(1, |x_j|). Errors are
 * |analytic − fd| / max(1, |fd|), reported as maxima per oracle.
 */
DerivativeReport check_derivatives(const NsdpProblem& p, const Vector& x, double tolerance);

}  // namespace sqsdp
