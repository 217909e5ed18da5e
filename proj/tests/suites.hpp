#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// binary. Each returns the worst observed violation next to a pass flag.

#include <cstdint>
#include <string>

#include "oracles.hpp"
#include "sqsdp/corpus.hpp"
#include "sqsdp/merit.hpp"
#include "sqsdp/subqp.hpp"

namespace suites {

struct Result {
  bool passed = true;
  double worst = 0.0;
  int trials = 0;
  std::string detail;

  void record(double error, double tol) {
    ++trials;
    worst = std::max(worst, error);
    if (!(error <= tol)) passed = false;
  }
};

inline sqsdp::SymmetricMatrix sym(const oracle::Mat& a) { return sqsdp::SymmetricMatrix(a); }

/// |⟨Y,Z⟩ − svec(Y)ᵀsvec(Z)| ≤ 1e-10·(1 + ‖Y‖_F‖Z‖_F).
inline Result svec_isometry(int trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Result res;
  for (int t = 0; t < trials; ++t) {
    const int d = rng.integer(1, 6);
    const oracle::Mat y = rng.symmetric(d, 10.0), z = rng.symmetric(d, 10.0);
    const double err = std::abs(oracle::trace_inner(y, z) - sqsdp::svec(sym(y)).dot(sqsdp::svec(sym(z))));
    res.record(err / (1.0 + y.norm() * z.norm()), 1e-10);
  }
  return res;
}

/// A = [A]_+ − [−A]_+ and ⟨[A]_+, [−A]_+⟩ = 0, both within 1e-9.
inline Result moreau(int trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Result res;
  for (int t = 0; t < trials; ++t) {
    const int d = rng.integer(1, 6);
    const auto a = sym(rng.symmetric(d, 5.0));
    const auto plus = sqsdp::psd_project(a), minus = sqsdp::psd_project(-a);
    res.record(sqsdp::frobenius_norm(a - (plus - minus)), 1e-9);
    res.record(std::abs(sqsdp::inner(plus, minus)), 1e-9);
  }
  return res;
}

/// [[A]_+]_+ = [A]_+ within 1e-10.
inline Result idempotence(int trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Result res;
  for (int t = 0; t < trials; ++t) {
    const int d = rng.integer(1, 6);
    const auto p = sqsdp::psd_project(sym(rng.symmetric(d, 5.0)));
    res.record(sqsdp::frobenius_norm(sqsdp::psd_project(p) - p), 1e-10);
  }
  return res;
}

/// ‖[A]_+ − [B]_+‖_F ≤ ‖A − B‖_F, reported as the excess of the left side.
inline Result nonexpansive(int trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Result res;
  for (int t = 0; t < trials; ++t) {
    const int d = rng.integer(1, 6);
    const auto a = sym(rng.symmetric(d, 5.0));
    const auto b = a + sym(rng.symmetric(d, rng.uniform(1e-3, 5.0)));
    const double lhs = sqsdp::frobenius_norm(sqsdp::psd_project(a) - sqsdp::psd_project(b));
    const double rhs = sqsdp::frobenius_norm(a - b);
    res.record(std::max(0.0, lhs - rhs), 1e-12 * (1.0 + rhs));
  }
  return res;
}

/// λ_1(A) + λ_i(B) ≤ λ_i(A + B) ≤ λ_d(A) + λ_i(B) within 1e-9, reference eigenvalues by Jacobi.
inline Result weyl(int trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Result res;
  for (int t = 0; t < trials; ++t) {
    const int d = rng.integer(1, 6);
    const oracle::Mat a = rng.symmetric(d, 5.0), b = rng.symmetric(d, 5.0);
    const oracle::Vec la = oracle::jacobi_eigen(a).first;
    const oracle::Vec lb = oracle::jacobi_eigen(b).first;
    const oracle::Vec lab = sqsdp::eig_sym(sym(a + b)).eigenvalues;
    double violation = 0.0;
    for (int i = 0; i < d; ++i) {
      violation = std::max(violation, la(0) + lb(i) - lab(i));
      violation = std::max(violation, lab(i) - la(d - 1) - lb(i));
    }
    res.record(violation, 1e-9);
  }
  return res;
}

/// Probe point and multipliers for a problem, with σ log-uniform on [1e-2, 1].
struct Probe {
  oracle::Vec x;
  sqsdp::MeritParams mp;
};

inline Probe random_probe(const sqsdp::NsdpProblem& p, oracle::Rng& rng) {
  Probe pr;
  pr.x = rng.vector(p.n);
  pr.mp.sigma = std::pow(10.0, rng.uniform(-2.0, 0.0));
  pr.mp.y = rng.vector(p.m);
  pr.mp.Z = sym(rng.symmetric(p.d));
  return pr;
}

/// Analytic gradients of F, P and L against central differences.
struct GradientResults {
  Result merit;
  Result feasibility;
  Result lagrangian;
};

inline GradientResults gradient_suite(const sqsdp::NsdpProblem& p, int probes, std::uint64_t seed) {
  oracle::Rng rng(seed);
  GradientResults out;
  for (int t = 0; t < probes; ++t) {
    const Probe pr = random_probe(p, rng);
    const auto fd_merit =
        oracle::central_gradient([&](const oracle::Vec& x) { return sqsdp::merit_value(p, x, pr.mp); }, pr.x);
    out.merit.record(oracle::relative_error(sqsdp::merit_grad(p, pr.x, pr.mp), fd_merit), 1e-6);

    const auto fd_p = oracle::central_gradient([&](const oracle::Vec& x) { return sqsdp::feasibility_P(p, x); }, pr.x);
    out.feasibility.record(oracle::relative_error(sqsdp::feasibility_P_grad(p, pr.x), fd_p), 1e-6);

    const auto fd_l = oracle::central_gradient(
        [&](const oracle::Vec& x) { return sqsdp::lagrangian_value(p, x, pr.mp.y, pr.mp.Z); }, pr.x);
    out.lagrangian.record(oracle::relative_error(sqsdp::lagrangian_grad(p, pr.x, pr.mp.y, pr.mp.Z), fd_l),
                          1e-6);
  }
  return out;
}

/// Random subproblem with n ∈ {1, 2}, d = 2 and σ ∈ [0.5, 2].
inline sqsdp::SubproblemData tiny_subproblem(oracle::Rng& rng) {
  const int n = rng.integer(1, 2);
  sqsdp::SubproblemData data;
  data.sigma = rng.uniform(0.5, 2.0);
  data.M = rng.spd(n, 0.5);
  data.c = rng.vector(n, 2.0);
  data.T = sym(rng.symmetric(2, 2.0));
  for (int j = 0; j < n; ++j) data.A.push_back(sym(rng.symmetric(2)));
  data.s = oracle::Vec(0);
  data.g_x = oracle::Vec(0);
  data.jac_g = oracle::Mat(n, 0);
  data.Z = sqsdp::SymmetricMatrix::zero(2);
  return data;
}

/**
 * Accelerated projected gradient on the joint problem, written in the slack
 * S = A(ξ) + σ(Σ − T) ⪰ 0 so that the feasible set is ℝⁿ × S²₊:
 *
 *   q(ξ, S) = ⟨c, ξ⟩ + ½⟨Mξ, ξ⟩ + (σ/2)‖T + (S − A(ξ))/σ‖²_F.
 *
 * Returns the objective value after `iters` steps.
 */
inline double projected_gradient_value(const sqsdp::SubproblemData& data, int iters) {
  const auto n = data.c.size();
  const double sigma = data.sigma;
  const oracle::Mat t = data.T.matrix();
  auto a_of = [&](const oracle::Vec& xi) {
    oracle::Mat m = oracle::Mat::Zero(2, 2);
    for (Eigen::Index j = 0; j < n; ++j) m += xi(j) * data.A[static_cast<std::size_t>(j)].matrix();
    return m;
  };
  auto value = [&](const oracle::Vec& xi, const oracle::Mat& s) {
    const oracle::Mat sig = t + (s - a_of(xi)) / sigma;
    return data.c.dot(xi) + 0.5 * xi.dot(data.M * xi) + 0.5 * sigma * sig.squaredNorm();
  };

  // Lipschitz bound: ‖M‖ + (‖A‖² + 1)·2/σ, with ‖A‖² ≤ Σ‖A_j‖²_F.
  double a_sq = 0.0;
  for (const auto& a : data.A) a_sq += a.matrix().squaredNorm();
  const double lip = data.M.norm() + 2.0 * (a_sq + 1.0) / sigma;
  const double step = 1.0 / lip;

  oracle::Vec xi = oracle::Vec::Zero(n), xi_prev = xi;
  oracle::Mat s = sigma * oracle::Mat::Identity(2, 2), s_prev = s;
  double momentum = 1.0;
  for (int k = 0; k < iters; ++k) {
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double w = (momentum - 1.0) / next_momentum;
    const oracle::Vec yxi = xi + w * (xi - xi_prev);
    const oracle::Mat ys = s + w * (s - s_prev);

    const oracle::Mat sig = t + (ys - a_of(yxi)) / sigma;
    oracle::Vec grad_xi = data.c + data.M * yxi;
    for (Eigen::Index j = 0; j < n; ++j) grad_xi(j) -= oracle::trace_inner(data.A[static_cast<std::size_t>(j)].matrix(), sig);
    const oracle::Mat grad_s = sig;

    xi_prev = xi;
    s_prev = s;
    xi = yxi - step * grad_xi;
    oracle::Mat trial = ys - step * grad_s;
    trial = 0.5 * (trial + trial.transpose());
    s = oracle::psd_part_2x2(trial);
    momentum = next_momentum;
  }
  return value(xi, s);
}

struct SubproblemOracleResult {
  Result objective_gap;
  Result residuals;
  Result feasible_point;
};

/// Reduced-form solutions against the joint-problem oracle and their KKT residuals.
inline SubproblemOracleResult subproblem_oracle_suite(int count, std::uint64_t seed, int iters = 20000) {
  oracle::Rng rng(seed);
  SubproblemOracleResult out;
  for (int t = 0; t < count; ++t) {
    const sqsdp::SubproblemData data = tiny_subproblem(rng);
    const sqsdp::SubproblemSolution sol = sqsdp::solve_subproblem(data);
    const double reference = projected_gradient_value(data, iters);
    const double objective = sqsdp::subproblem_objective(data, sol.xi, sol.Sigma);
    out.objective_gap.record(std::abs(objective - reference), 1e-6);

    const sqsdp::SubproblemResiduals r = sqsdp::subproblem_residuals(data, sol);
    out.residuals.record(std::max({r.projection, r.slack_violation, r.complementarity, r.stationarity}), 1e-8);

    // (ξ, Σ) = (0, I + T) is strictly feasible.
    const double at_feasible =
        sqsdp::subproblem_objective(data, oracle::Vec::Zero(data.c.size()), sqsdp::SymmetricMatrix::identity(2) + data.T);
    out.feasible_point.record(std::max(0.0, objective - at_feasible), 1e-12);
  }
  return out;
}

struct ZeroGradientResult {
  Result merit_grad;
  Result xi;
  Result sigma;
};

/**
 * Points where ∇F vanishes: a random smooth instance whose ∇f is shifted by
 * the merit gradient at a random (x, y, Z, σ). The subproblem must return
 * ξ = 0 and Σ = [T]_+.
 */
inline ZeroGradientResult zero_gradient_suite(int count, std::uint64_t seed) {
  oracle::Rng rng(seed);
  ZeroGradientResult out;
  for (int t = 0; t < count; ++t) {
    const int n = rng.integer(1, 4), m = rng.integer(0, n), d = rng.integer(1, 3);
    sqsdp::NsdpProblem p = sqsdp::corpus::problem_random_smooth(n, m, d, 1000 + seed + t).problem;
    const oracle::Vec x = rng.vector(n);
    sqsdp::MeritParams mp;
    mp.sigma = rng.uniform(0.05, 1.0);
    mp.y = rng.vector(m);
    mp.Z = sqsdp::psd_project(sym(rng.symmetric(d)));
    const oracle::Vec shift = sqsdp::merit_grad(p, x, mp);
    auto base = p.eval_grad_f;
    p.eval_grad_f = [base, shift](const oracle::Vec& z) { return (base(z) - shift).eval(); };

    const sqsdp::PointEvaluation ev = sqsdp::evaluate(p, x);
    out.merit_grad.record(sqsdp::merit_grad(ev, mp).norm(), 1e-12);
    const oracle::Mat h = sqsdp::hessian_or_approx(p, x, mp.y, mp.Z, mp.sigma, {});
    const sqsdp::SubproblemData data = sqsdp::build_subproblem(ev, mp.y, mp.Z, mp.sigma, h);
    const sqsdp::SubproblemSolution sol = sqsdp::solve_subproblem(data);
    out.xi.record(sol.xi.norm(), 1e-8);
    out.sigma.record(sqsdp::frobenius_norm(sol.Sigma - sqsdp::psd_project(data.T)), 1e-8);
  }
  return out;
}

}  // namespace suites
