#pragma once

#include "sqsdp/model.hpp"

namespace sqsdp {

/// Parameters (σ, y, Z) of the augmented-Lagrangian merit F(·; σ, y, Z).
struct MeritParams {
  double sigma = 1.0;
  Vector y;
  SymmetricMatrix Z;
};

/// F(x) = f(x) + ‖σy − g(x)‖²/(2σ) + ‖[σZ − X(x)]_+‖²_F/(2σ).
double merit_value(const NsdpProblem& p, const Vector& x, const MeritParams& mp);
double merit_value(const PointEvaluation& ev, const MeritParams& mp);

/// ∇F(x) = ∇f(x) − ∇g(x)(y − g(x)/σ) − A*(x)[Z − X(x)/σ]_+.
Vector merit_grad(const NsdpProblem& p, const Vector& x, const MeritParams& mp);
Vector merit_grad(const PointEvaluation& ev, const MeritParams& mp);

/// P(x) = ‖g(x)‖²/2 + ‖[−X(x)]_+‖²_F/2.
double feasibility_P(const NsdpProblem& p, const Vector& x);

/// ∇P(x) = ∇g(x)g(x) − A*(x)[−X(x)]_+.
Vector feasibility_P_grad(const NsdpProblem& p, const Vector& x);

}  // namespace sqsdp
