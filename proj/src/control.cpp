#include "sqsdp/control.hpp"

#include <algorithm>
#include <cmath>

#include "sqsdp/errors.hpp"

namespace sqsdp {

void ControlParams::validate() const {
  if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigurationError("kappa must lie in (0, 1)");
  if (!(y_max > 0.0)) throw ConfigurationError("y_max must be positive");
  if (!(z_max > 0.0)) throw ConfigurationError("z_max must be positive");
}

char to_char(StepKind kind) {
  switch (kind) {
    case StepKind::V: return 'V';
    case StepKind::O: return 'O';
    case StepKind::M: return 'M';
    case StepKind::F: return 'F';
  }
  return '?';
}

double r_V(const PointEvaluation& ev) {
  return ev.g.norm() + std::max(0.0, lambda_max(-ev.X));
}

double r_V(const NsdpProblem& p, const Vector& x) {
  PointEvaluation ev;
  ev.g = eval_g(p, x);
  ev.X = eval_X(p, x);
  return r_V(ev);
}

double r_O(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z) {
  return lagrangian_grad(ev, y, z).norm() + (ev.X.matrix() * z.matrix()).norm();
}

double r_O(const NsdpProblem& p, const Vector& x, const Vector& y, const SymmetricMatrix& z) {
  return r_O(evaluate(p, x), y, z);
}

double residual_r(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z) {
  return r_V(ev) + r_O(ev, y, z);
}

PhiPsi phi_psi(double rv, double ro, double kappa) { return {rv + kappa * ro, kappa * rv + ro}; }

PhiPsi phi_psi(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z,
               const ControlParams& cp) {
  return phi_psi(r_V(ev), r_O(ev, y, z), cp.kappa);
}

ProcedureResult procedure_update(const PointEvaluation& next, const MultiplierPair& trial,
                                 const MultiplierPair& current, const ControlState& state,
                                 double merit_grad_norm_at_next, const ControlParams& cp,
                                 int iteration) {
  ProcedureResult out{current, state, {StepKind::F, iteration}};
  const PhiPsi pp = phi_psi(next, trial.y, trial.Z, cp);

  if (pp.phi <= 0.5 * state.phi) {
    out.state.phi = 0.5 * state.phi;
    out.multipliers = trial;
    out.tag.kind = StepKind::V;
  } else if (pp.psi <= 0.5 * state.psi) {
    out.state.psi = 0.5 * state.psi;
    out.multipliers = trial;
    out.tag.kind = StepKind::O;
  } else if (merit_grad_norm_at_next <= state.gamma) {
    out.state.gamma = 0.5 * state.gamma;
    Vector y = current.y;
    if (y.size() > 0) {
      y = (current.y - next.g / state.sigma).cwiseMax(-cp.y_max).cwiseMin(cp.y_max);
    }
    SymmetricMatrix z =
        box_project_spectral(psd_project(current.Z - next.X / state.sigma), cp.z_max);
    out.multipliers = {std::move(y), std::move(z)};
    out.tag.kind = StepKind::M;
  }
  return out;
}

ProcedureResult procedure_update(const NsdpProblem& p, const Vector& x_next,
                                 const MultiplierPair& trial, const MultiplierPair& current,
                                 const ControlState& state, double merit_grad_norm_at_next,
                                 const ControlParams& cp, int iteration) {
  return procedure_update(evaluate(p, x_next), trial, current, state, merit_grad_norm_at_next, cp,
                          iteration);
}

double penalty_update(const ControlState& before, double merit_grad_norm_at_next, double r_next,
                      double sigma_min) {
  if (merit_grad_norm_at_next > before.gamma) return before.sigma;
  const double candidate = std::min(0.5 * before.sigma, std::pow(r_next, 1.5));
  return std::max(sigma_min, candidate);
}

double cakkt_residual(const SymmetricMatrix& x_mat, const SymmetricMatrix& z) {
  return frobenius_norm(jordan_product(x_mat, z));
}

double cakkt_residual(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& z) {
  return cakkt_residual(eval_X(p, x), z);
}

double takkt_residual(const SymmetricMatrix& x_mat, const SymmetricMatrix& z) {
  return std::abs(inner(x_mat, z));
}

double takkt_residual(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& z) {
  return takkt_residual(eval_X(p, x), z);
}

}  // namespace sqsdp
