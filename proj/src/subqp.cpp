#include "sqsdp/subqp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

namespace sqsdp {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct InnerState {
  Vector xi;
  EigenDecomposition eig;
  SymmetricMatrix Sigma;
  Vector adj_sigma;
  double value = 0.0;
  /// Bound on the rounding error of `value`.
  double value_noise = 0.0;
  Vector grad;
};

InnerState evaluate_state(const SubproblemData& data, const Vector& xi) {
  InnerState st;
  st.xi = xi;
  const SymmetricMatrix w = data.T - apply_A(data.A, xi) / data.sigma;
  st.eig = eig_sym(w);
  st.Sigma = psd_project(st.eig);
  st.adj_sigma = apply_A_adjoint(data.A, st.Sigma);
  const Vector mxi = data.M * xi;
  const double lin = data.c.dot(xi);
  const double quad = 0.5 * xi.dot(mxi);
  const double sigma_norm = svec(st.Sigma).norm();
  const double cone = 0.5 * data.sigma * sigma_norm * sigma_norm;
  st.value = lin + quad + cone;
  // Σ = [W]_+ is accurate to about eps·‖W‖ entrywise, and ‖W‖ grows like 1/σ.
  const double w_norm = st.eig.eigenvalues.cwiseAbs().maxCoeff();
  st.value_noise = std::numeric_limits<double>::epsilon() *
                   (std::abs(lin) + std::abs(quad) + cone + data.sigma * sigma_norm * w_norm);
  st.grad = data.c + mxi - st.adj_sigma;
  return st;
}

double stationarity_scale(const SubproblemData& data, const InnerState& st) {
  return std::max({1.0, data.c.norm(), (data.M * st.xi).norm(), st.adj_sigma.norm()});
}

/// Rounding level of ∇θ. Σ carries an absolute error of order eps·‖W‖, which
/// dominates once σ is tiny and W has eigenvalues of size 1/σ.
double gradient_noise(const SubproblemData& data, const InnerState& st, double a_norm) {
  const double w_norm = st.eig.eigenvalues.cwiseAbs().maxCoeff();
  return 8.0 * std::numeric_limits<double>::epsilon() *
         (data.c.norm() + data.M.norm() * st.xi.norm() + a_norm * w_norm);
}

double stopping_threshold(const SubproblemData& data, const InnerState& st, double tol,
                          double a_norm) {
  return std::max(tol * stationarity_scale(data, st), gradient_noise(data, st, a_norm));
}

Matrix generalized_jacobian(const SubproblemData& data, const InnerState& st) {
  const auto n = static_cast<Eigen::Index>(data.A.size());
  Matrix j = data.M;
  std::vector<SymmetricMatrix> directional;
  directional.reserve(data.A.size());
  for (const auto& a : data.A) directional.push_back(dpsd_project(st.eig, a));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) {
      const double v = inner(data.A[r], directional[c]) / data.sigma;
      j(r, c) += v;
      if (c != r) j(c, r) += v;
    }
  }
  return j;
}

SubproblemSolution make_solution(const SubproblemData& data, const InnerState& st, int iters) {
  SubproblemSolution sol;
  sol.xi = st.xi;
  sol.Sigma = st.Sigma;
  sol.Z_trial = st.Sigma;
  sol.y_trial = data.s;
  if (data.jac_g.cols() > 0) sol.y_trial -= data.jac_g.transpose() * st.xi / data.sigma;
  sol.kkt_residual = st.grad.norm();
  sol.objective = st.value;
  sol.newton_iters = iters;
  return sol;
}

}  // namespace

SubproblemData build_subproblem(const PointEvaluation& ev, const Vector& y,
                                const SymmetricMatrix& z, double sigma, const Matrix& h) {
  if (!(sigma > 0.0)) throw ConfigurationError("build_subproblem: sigma must be positive");
  if (y.size() != ev.g.size()) throw DimensionError("build_subproblem: y has wrong length");
  if (z.dim() != ev.X.dim()) throw DimensionError("build_subproblem: Z has wrong order");
  const auto n = ev.grad_f.size();
  if (h.rows() != n || h.cols() != n) throw DimensionError("build_subproblem: H must be n x n");

  SubproblemData data;
  data.sigma = sigma;
  data.s = y - ev.g / sigma;
  data.T = z - ev.X / sigma;
  data.M = h;
  data.c = ev.grad_f;
  if (ev.g.size() > 0) {
    data.M += ev.jac_g * ev.jac_g.transpose() / sigma;
    data.c -= ev.jac_g * data.s;
  }
  data.A = ev.A;
  data.g_x = ev.g;
  data.jac_g = ev.jac_g;
  data.Z = z;
  return data;
}

ReducedObjective reduced_objective(const SubproblemData& data, const Vector& xi) {
  const InnerState st = evaluate_state(data, xi);
  return {st.value, st.grad};
}

double subproblem_objective(const SubproblemData& data, const Vector& xi,
                            const SymmetricMatrix& sigma_mat) {
  return data.c.dot(xi) + 0.5 * xi.dot(data.M * xi) +
         0.5 * data.sigma * svec(sigma_mat).squaredNorm();
}

SubproblemResiduals subproblem_residuals(const SubproblemData& data, const SubproblemSolution& sol) {
  SubproblemResiduals res;
  const SymmetricMatrix a_xi = apply_A(data.A, sol.xi);
  res.projection = frobenius_norm(sol.Sigma - psd_project(data.T - a_xi / data.sigma));
  const SymmetricMatrix slack = a_xi + data.sigma * (sol.Sigma - data.T);
  res.slack_violation = std::max(0.0, -lambda_min(slack));
  res.complementarity = std::abs(inner(sol.Sigma, slack));
  res.stationarity = (data.c + data.M * sol.xi - apply_A_adjoint(data.A, sol.Sigma)).norm();
  return res;
}

SubproblemSolution solve_subproblem(const SubproblemData& data, const SubproblemOptions& opts) {
  if (!(data.sigma > 0.0)) throw ConfigurationError("solve_subproblem: sigma must be positive");
  const auto n = data.c.size();
  if (data.M.rows() != n || data.M.cols() != n ||
      data.A.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("solve_subproblem: inconsistent dimensions");
  }
  if (Eigen::LLT<Matrix>(data.M).info() != Eigen::Success) {
    throw ConfigurationError("solve_subproblem: M is not positive definite");
  }

  double a_norm_sq = 0.0;
  for (const auto& a : data.A) a_norm_sq += svec(a).squaredNorm();
  const double a_norm = std::sqrt(a_norm_sq);

  InnerState st = evaluate_state(data, Vector::Zero(n));
  int iter = 0;
  for (;; ++iter) {
    if (st.grad.norm() <= stopping_threshold(data, st, opts.tol, a_norm)) {
      return make_solution(data, st, iter);
    }
    if (iter >= opts.max_iter) break;

    const Matrix jac = generalized_jacobian(data, st);
    Vector dir;
    Eigen::LLT<Matrix> llt(jac);
    if (llt.info() == Eigen::Success) {
      dir = llt.solve(-st.grad);
    } else {
      dir = Eigen::LDLT<Matrix>(jac).solve(-st.grad);
    }
    double slope = st.grad.dot(dir);
    if (!dir.allFinite() || !(slope < 0.0)) {
      dir = -st.grad;
      slope = -st.grad.squaredNorm();
    }

    double t = 1.0;
    bool accepted = false;
    InnerState trial;
    for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5) {
      trial = evaluate_state(data, st.xi + t * dir);
      if (trial.value <= st.value + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      // The predicted decrease can fall below the rounding level of θ; then
      // accept a step that is flat in θ up to rounding and reduces ‖∇θ‖.
      const double rounding = 64.0 * (st.value_noise + trial.value_noise);
      if (trial.value <= st.value + rounding &&
          trial.grad.norm() <= (1.0 - kArmijo * t) * st.grad.norm()) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no further decrease representable in floating point
    st = std::move(trial);
  }

  throw SubproblemNonconvergence(
      "solve_subproblem: stopped after " + std::to_string(iter) + " Newton iterations with |grad| = " +
          fmt_double(st.grad.norm()) + " > " +
          fmt_double(stopping_threshold(data, st, opts.tol, a_norm)),
      make_solution(data, st, iter));
}

DescentCheck descent_check(const SubproblemData& data, const SubproblemSolution& sol,
                           const Vector& merit_gradient) {
  DescentCheck chk;
  chk.lhs = merit_gradient.dot(sol.xi);
  chk.rhs = -sol.xi.dot(data.M * sol.xi) -
            data.sigma * svec(sol.Sigma - data.Z).squaredNorm();
  const double allowance = 1e-8 * (1.0 + sol.xi.squaredNorm());
  chk.slack = chk.rhs + allowance - chk.lhs;
  chk.passed = chk.slack >= 0.0;
  const double rhs_projected = -sol.xi.dot(data.M * sol.xi) -
                               data.sigma * svec(sol.Sigma - psd_project(data.T)).squaredNorm();
  chk.slack_projected = rhs_projected + allowance - chk.lhs;
  return chk;
}

}  // namespace sqsdp
