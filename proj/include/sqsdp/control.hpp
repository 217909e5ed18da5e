#pragma once

#include <string_view>

#include "sqsdp/model.hpp"

namespace sqsdp {

struct ControlParams {
  double kappa = 1e-5;
  double y_max = 1e6;
  double z_max = 1e6;

  /// Throws ConfigurationError unless 0 < κ < 1 and y_max, z_max > 0.
  void validate() const;
};

/// Adaptive thresholds φ, ψ, γ and the penalty σ.
struct ControlState {
  double phi = 1e3;
  double psi = 1e3;
  double gamma = 0.1;
  double sigma = 0.1;
};

/// Violation, optimality, merit and failure iterations.
enum class StepKind { V, O, M, F };

struct StepTag {
  StepKind kind = StepKind::F;
  int iteration = 0;
};

char to_char(StepKind kind);

/// r_V(x) = ‖g(x)‖ + [λ_max(−X(x))]_+.
double r_V(const PointEvaluation& ev);
double r_V(const NsdpProblem& p, const Vector& x);

/// r_O(x, y, Z) = ‖∇ₓL(x, y, Z)‖ + ‖X(x)Z‖_F (plain matrix product).
double r_O(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z);
double r_O(const NsdpProblem& p, const Vector& x, const Vector& y, const SymmetricMatrix& z);

/// r = r_V + r_O.
double residual_r(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z);

struct PhiPsi {
  double phi = 0.0;
  double psi = 0.0;
};

/// Φ = r_V + κ r_O, Ψ = κ r_V + r_O.
PhiPsi phi_psi(double rv, double ro, double kappa);
PhiPsi phi_psi(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z,
               const ControlParams& cp);

struct ProcedureResult {
  MultiplierPair multipliers;
  ControlState state;
  StepTag tag;
};

/**
 * Multiplier and threshold update at x_{k+1}.
 *
 * V: Φ(trial) ≤ φ/2 → halve φ, take the trial pair.
 * O: Ψ(trial) ≤ ψ/2 → halve ψ, take the trial pair.
 * M: ‖∇F(x_{k+1}; σ_k, y_k, Z_k)‖ ≤ γ → halve γ,
 *    y ← Π_C(y_k − g(x_{k+1})/σ_k), Z ← Π_D([Z_k − X(x_{k+1})/σ_k]_+).
 * F: nothing changes.
 *
 * σ is carried over unchanged; see penalty_update.
 */
ProcedureResult procedure_update(const PointEvaluation& next, const MultiplierPair& trial,
                                 const MultiplierPair& current, const ControlState& state,
                                 double merit_grad_norm_at_next, const ControlParams& cp,
                                 int iteration = 0);
ProcedureResult procedure_update(const NsdpProblem& p, const Vector& x_next,
                                 const MultiplierPair& trial, const MultiplierPair& current,
                                 const ControlState& state, double merit_grad_norm_at_next,
                                 const ControlParams& cp, int iteration = 0);

/**
 * σ_{k+1} = max(σ_min, min(σ_k/2, r_next^{3/2})) when
 * ‖∇F(x_{k+1}; σ_k, y_k, Z_k)‖ ≤ γ_k, else σ_k. `before` is the state
 * entering the iteration (its γ is γ_k).
 */
double penalty_update(const ControlState& before, double merit_grad_norm_at_next, double r_next,
                      double sigma_min);

/// ‖X(x) ∘ Z‖_F.
double cakkt_residual(const SymmetricMatrix& x_mat, const SymmetricMatrix& z);
double cakkt_residual(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& z);

/// |⟨X(x), Z⟩|.
double takkt_residual(const SymmetricMatrix& x_mat, const SymmetricMatrix& z);
double takkt_residual(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& z);

}  // namespace sqsdp
