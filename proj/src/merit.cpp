#include "sqsdp/merit.hpp"

#include "sqsdp/errors.hpp"

namespace sqsdp {

namespace {

void check_params(const PointEvaluation& ev, const MeritParams& mp) {
  if (!(mp.sigma > 0.0)) throw ConfigurationError("merit: sigma must be positive");
  if (mp.y.size() != ev.g.size()) throw DimensionError("merit: y has wrong length");
  if (mp.Z.dim() != ev.X.dim()) throw DimensionError("merit: Z has wrong order");
}

}  // namespace

double merit_value(const PointEvaluation& ev, const MeritParams& mp) {
  check_params(ev, mp);
  const double s = mp.sigma;
  const double eq = (s * mp.y - ev.g).squaredNorm();
  const double cone = svec(psd_project(s * mp.Z - ev.X)).squaredNorm();
  return ev.f + (eq + cone) / (2.0 * s);
}

double merit_value(const NsdpProblem& p, const Vector& x, const MeritParams& mp) {
  PointEvaluation ev;
  ev.f = eval_f(p, x);
  ev.g = eval_g(p, x);
  ev.X = eval_X(p, x);
  return merit_value(ev, mp);
}

Vector merit_grad(const PointEvaluation& ev, const MeritParams& mp) {
  check_params(ev, mp);
  const double s = mp.sigma;
  const SymmetricMatrix proj = psd_project(mp.Z - ev.X / s);
  Vector grad = ev.grad_f - apply_A_adjoint(ev.A, proj);
  if (ev.g.size() > 0) grad -= ev.jac_g * (mp.y - ev.g / s);
  return grad;
}

Vector merit_grad(const NsdpProblem& p, const Vector& x, const MeritParams& mp) {
  return merit_grad(evaluate(p, x), mp);
}

double feasibility_P(const NsdpProblem& p, const Vector& x) {
  const Vector g = eval_g(p, x);
  const SymmetricMatrix neg = psd_project(-eval_X(p, x));
  return 0.5 * g.squaredNorm() + 0.5 * svec(neg).squaredNorm();
}

Vector feasibility_P_grad(const NsdpProblem& p, const Vector& x) {
  const PointEvaluation ev = evaluate(p, x);
  Vector grad = -apply_A_adjoint(ev.A, psd_project(-ev.X));
  if (p.m > 0) grad += ev.jac_g * ev.g;
  return grad;
}

}  // namespace sqsdp
