#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sqsdp/control.hpp"
#include "sqsdp/merit.hpp"
#include "sqsdp/model.hpp"
#include "sqsdp/subqp.hpp"

namespace sqsdp {

/// Algorithm constants. Defaults reproduce the reference experiment settings.
struct SolverOptions {
  double tau = 1e-4;
  double omega = 1e-4;
  double beta = 0.5;
  double kappa = 1e-5;
  double y_max = 1e6;
  double z_max = 1e6;
  double epsilon = 1e-4;
  int k_max = 200;
  double phi0 = 1e3;
  double psi0 = 1e3;
  double gamma0 = 0.1;
  double sigma0 = 0.1;
  /// ‖∇F‖ at or below this value skips the subproblem.
  double grad_F_zero_tol = 1e-4;
  SubproblemOptions subproblem{};
  /// Floor on σ so that 1/σ stays finite; 0 disables it.
  double sigma_min = 1e-12;
  /// Largest backtracking exponent tried before the line search fails.
  int ell_max = 60;
  HessianPolicy hessian{};

  /// Throws ConfigurationError on out-of-range values.
  void validate() const;
  ControlParams control() const { return {kappa, y_max, z_max}; }
};

struct Iterate {
  int k = 0;
  Vector x;
  Vector y;
  SymmetricMatrix Z;
  ControlState control;
};

enum class SolveStatus {
  ResidualConverged,
  GammaConverged,
  MaxIterations,
  SubproblemFailure,
  LineSearchFailure,
  NumericalFailure,
};

std::string_view to_string(SolveStatus status);

/// True for the three stopping tests of the outer loop.
inline bool is_normal_stop(SolveStatus s) {
  return s == SolveStatus::ResidualConverged || s == SolveStatus::GammaConverged ||
         s == SolveStatus::MaxIterations;
}

/**
 * State at iterate k together with the step that produced it.
 * Row 0 has step_tag '-' and no step data.
 */
struct TraceRow {
  int k = 0;
  double r = 0.0;
  double rV = 0.0;
  double rO = 0.0;
  /// Φ and Ψ at (x_k, y_k, Z_k).
  double Phi = 0.0;
  double Psi = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
  char step_tag = '-';
  int ell = 0;
  double xi_norm = 0.0;
  double cakkt = 0.0;
  /// True when ‖∇F‖ ≤ grad_F_zero_tol skipped the subproblem.
  bool shortcut = false;
  /// descent_check slack of the subproblem solution (0 for rows without one).
  double descent_slack = 0.0;
  bool descent_ok = true;
  /// descent_check slack with [T]_+ in place of Z.
  double descent_slack_projected = 0.0;
  /// F(x_{k}) − F(x_{k−1}) − τ α Δ under the parameters of iteration k−1 (≤ 0 when Armijo holds).
  double armijo_excess = 0.0;
  /// |∇θ(0) − ∇F(x_{k−1})|, the reduced-gradient / merit-gradient identity gap.
  double identity_gap = 0.0;
  int newton_iters = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  double r = 0.0;
  double rV = 0.0;
  double rO = 0.0;
  double cakkt = 0.0;
  double grad_F_norm = 0.0;
  Iterate final_iterate;
  std::vector<TraceRow> trace;
  double wall_time_seconds = 0.0;
  std::string message;
};

struct LineSearchResult {
  double alpha = 1.0;
  int ell = 0;
  double merit = 0.0;
  double merit_at_x = 0.0;
  double delta = 0.0;
};

class LineSearchError : public NumericalError {
 public:
  LineSearchError(const std::string& what, std::vector<double> sampled)
      : NumericalError(what), sampled_(std::move(sampled)) {}
  /// Merit values at x + β^ℓ p for ℓ = 0, …, ell_max.
  const std::vector<double>& sampled_merit() const { return sampled_; }

 private:
  std::vector<double> sampled_;
};

/**
 * Armijo backtracking on the merit: the smallest ℓ ∈ [0, ell_max] with
 * F(x + β^ℓ p) ≤ F(x) + τ β^ℓ Δ, Δ = max(⟨∇F(x), p⟩, −ω‖p‖²).
 */
LineSearchResult line_search(const NsdpProblem& p, const Vector& x, const Vector& dir,
                             const MeritParams& mp, const Vector& merit_gradient,
                             const SolverOptions& opts);

/// Runs the stabilized SQSDP outer loop from (x0, y0, Z0).
SolveReport solve(const NsdpProblem& p, const Vector& x0, const Vector& y0,
                  const SymmetricMatrix& z0, const SolverOptions& opts = {});

/// Starts from (0, 0, O).
SolveReport solve(const NsdpProblem& p, const SolverOptions& opts = {});

/// Header `k,r,rV,rO,phi,psi,gamma,sigma,step_tag,ell,xi_norm,cakkt`, one row per trace entry.
void write_trace_csv(const SolveReport& report, std::ostream& out);

}  // namespace sqsdp
