#include "sqsdp/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace sqsdp {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

MultiplierPair shortcut_trial(const PointEvaluation& ev, const MeritParams& mp) {
  Vector y = mp.y;
  if (y.size() > 0) y -= ev.g / mp.sigma;
  return {std::move(y), psd_project(mp.Z - ev.X / mp.sigma)};
}

void fill_residuals(TraceRow& row, const PointEvaluation& ev, const Iterate& it, double kappa) {
  row.k = it.k;
  row.rV = r_V(ev);
  row.rO = r_O(ev, it.y, it.Z);
  row.r = row.rV + row.rO;
  const PhiPsi pp = phi_psi(row.rV, row.rO, kappa);
  row.Phi = pp.phi;
  row.Psi = pp.psi;
  row.phi = it.control.phi;
  row.psi = it.control.psi;
  row.gamma = it.control.gamma;
  row.sigma = it.control.sigma;
  row.cakkt = cakkt_residual(ev.X, it.Z);
}

}  // namespace

void SolverOptions::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ConfigurationError(what);
  };
  need(in_open_unit(tau), "tau must lie in (0, 1)");
  need(in_open_unit(omega), "omega must lie in (0, 1)");
  need(in_open_unit(beta), "beta must lie in (0, 1)");
  control().validate();
  need(epsilon > 0.0, "epsilon must be positive");
  need(k_max >= 0, "k_max must be non-negative");
  need(phi0 > 0.0 && psi0 > 0.0 && gamma0 > 0.0 && sigma0 > 0.0,
       "phi0, psi0, gamma0, sigma0 must be positive");
  need(grad_F_zero_tol >= 0.0, "grad_F_zero_tol must be non-negative");
  need(subproblem.tol > 0.0 && subproblem.max_iter >= 1, "invalid subproblem tolerance/iterations");
  need(sigma_min >= 0.0 && sigma_min <= sigma0, "sigma_min must lie in [0, sigma0]");
  need(ell_max >= 0, "ell_max must be non-negative");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ResidualConverged: return "ResidualConverged";
    case SolveStatus::GammaConverged: return "GammaConverged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::SubproblemFailure: return "SubproblemFailure";
    case SolveStatus::LineSearchFailure: return "LineSearchFailure";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

LineSearchResult line_search(const NsdpProblem& p, const Vector& x, const Vector& dir,
                             const MeritParams& mp, const Vector& merit_gradient,
                             const SolverOptions& opts) {
  LineSearchResult res;
  res.merit_at_x = merit_value(p, x, mp);
  if (dir.squaredNorm() == 0.0) {
    res.merit = res.merit_at_x;
    return res;
  }
  res.delta = std::max(merit_gradient.dot(dir), -opts.omega * dir.squaredNorm());
  if (!(res.delta < 0.0)) {
    throw LineSearchError("line_search: direction is not a descent direction of the merit", {});
  }

  std::vector<double> sampled;
  double alpha = 1.0;
  for (int ell = 0; ell <= opts.ell_max; ++ell, alpha *= opts.beta) {
    const double value = merit_value(p, x + alpha * dir, mp);
    sampled.push_back(value);
    if (value <= res.merit_at_x + opts.tau * alpha * res.delta) {
      res.alpha = alpha;
      res.ell = ell;
      res.merit = value;
      return res;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "line_search: no Armijo step up to ell = %d (F(x) = %.6e, Delta = %.6e)",
                opts.ell_max, res.merit_at_x, res.delta);
  throw LineSearchError(buf, std::move(sampled));
}

SolveReport solve(const NsdpProblem& p, const SolverOptions& opts) {
  return solve(p, Vector::Zero(p.n), Vector::Zero(p.m), SymmetricMatrix::zero(p.d), opts);
}

SolveReport solve(const NsdpProblem& p, const Vector& x0, const Vector& y0,
                  const SymmetricMatrix& z0, const SolverOptions& opts) {
  opts.validate();
  if (x0.size() != p.n || y0.size() != p.m || z0.dim() != p.d) {
    throw DimensionError(p.name + ": initial point has wrong dimensions");
  }
  const auto start = std::chrono::steady_clock::now();
  const ControlParams cp = opts.control();

  SolveReport report;
  Iterate it{0, x0, y0, z0, {opts.phi0, opts.psi0, opts.gamma0, opts.sigma0}};
  PointEvaluation ev = evaluate(p, it.x);
  TraceRow row;  // carries step data into the row of the iterate it produces

  auto finish = [&](SolveStatus status, std::string message = {}) {
    report.status = status;
    report.message = std::move(message);
    report.iterations = it.k;
    report.final_iterate = it;
    const TraceRow& last = report.trace.back();
    report.r = last.r;
    report.rV = last.rV;
    report.rO = last.rO;
    report.cakkt = last.cakkt;
    report.grad_F_norm = merit_grad(ev, {it.control.sigma, it.y, it.Z}).norm();
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  for (;;) {
    fill_residuals(row, ev, it, cp.kappa);
    report.trace.push_back(row);

    // Stopping tests
    if (row.r <= opts.epsilon) return finish(SolveStatus::ResidualConverged);
    if (it.control.gamma <= opts.epsilon) return finish(SolveStatus::GammaConverged);
    if (it.k >= opts.k_max) return finish(SolveStatus::MaxIterations);

    row = TraceRow{};
    const MeritParams mp{it.control.sigma, it.y, it.Z};
    MultiplierPair trial;
    PointEvaluation next;

    try {
      const Vector grad_F = merit_grad(ev, mp);
      if (grad_F.norm() <= opts.grad_F_zero_tol) {
        // Zero merit gradient: (ξ, Σ) = (0, [T]_+) without solving the subproblem.
        next = ev;
        trial = shortcut_trial(next, mp);
        row.shortcut = true;
      } else {
        // Subproblem
        const Matrix h =
            hessian_or_approx(p, it.x, it.y, it.Z, ev.jac_g, it.control.sigma, opts.hessian);
        const SubproblemData data = build_subproblem(ev, it.y, it.Z, it.control.sigma, h);
        row.identity_gap = (reduced_objective(data, Vector::Zero(p.n)).grad - grad_F).norm();

        const SubproblemSolution sol = solve_subproblem(data, opts.subproblem);
        const DescentCheck dc = descent_check(data, sol, grad_F);
        row.descent_slack = dc.slack;
        row.descent_ok = dc.passed;
        row.descent_slack_projected = dc.slack_projected;
        row.xi_norm = sol.xi.norm();
        row.newton_iters = sol.newton_iters;

        // Line search
        const LineSearchResult ls = line_search(p, it.x, sol.xi, mp, grad_F, opts);
        row.ell = ls.ell;
        row.armijo_excess = ls.merit - ls.merit_at_x - opts.tau * ls.alpha * ls.delta;
        next = evaluate(p, it.x + ls.alpha * sol.xi);
        trial = {sol.y_trial, sol.Z_trial};
      }
    } catch (const SubproblemNonconvergence& e) {
      return finish(SolveStatus::SubproblemFailure, e.what());
    } catch (const LineSearchError& e) {
      return finish(SolveStatus::LineSearchFailure, e.what());
    } catch (const NumericalError& e) {
      return finish(SolveStatus::NumericalFailure, e.what());
    }

    // Multiplier, threshold and penalty updates
    const double grad_F_next = merit_grad(next, mp).norm();
    const ProcedureResult pr = procedure_update(next, trial, {it.y, it.Z}, it.control, grad_F_next,
                                                cp, it.k);
    row.step_tag = to_char(pr.tag.kind);

    ControlState state = pr.state;
    const double r_next = residual_r(next, pr.multipliers.y, pr.multipliers.Z);
    state.sigma = penalty_update(it.control, grad_F_next, r_next, opts.sigma_min);

    // Advance
    it = Iterate{it.k + 1, next.x, pr.multipliers.y, pr.multipliers.Z, state};
    ev = std::move(next);
  }
}

void write_trace_csv(const SolveReport& report, std::ostream& out) {
  out << "k,r,rV,rO,phi,psi,gamma,sigma,step_tag,ell,xi_norm,cakkt\n";
  char buf[512];
  for (const TraceRow& row : report.trace) {
    std::snprintf(buf, sizeof buf, "%d,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%c,%d,%.12e,%.12e\n",
                  row.k, row.r, row.rV, row.rO, row.phi, row.psi, row.gamma, row.sigma, row.step_tag,
                  row.ell, row.xi_norm, row.cakkt);
    out << buf;
  }
}

}  // namespace sqsdp
