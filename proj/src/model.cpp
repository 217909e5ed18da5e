#include "sqsdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sqsdp/errors.hpp"

namespace sqsdp {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

void check_x(const NsdpProblem& p, const Vector& x) {
  require(x.size() == p.n, p.name + ": x has length " + std::to_string(x.size()) +
                               ", expected n = " + std::to_string(p.n));
}

double relative_error(double analytic, double reference) {
  return std::abs(analytic - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

double eval_f(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  return p.eval_f(x);
}

Vector eval_grad_f(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  Vector gf = p.eval_grad_f(x);
  require(gf.size() == p.n, p.name + ": grad f has wrong length");
  return gf;
}

Vector eval_g(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  if (p.m == 0) return Vector(0);
  Vector g = p.eval_g(x);
  require(g.size() == p.m, p.name + ": g has wrong length");
  return g;
}

Matrix eval_jac_g(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  if (p.m == 0) return Matrix(p.n, 0);
  Matrix j = p.eval_jac_g(x);
  require(j.rows() == p.n && j.cols() == p.m, p.name + ": jac g must be n x m");
  return j;
}

SymmetricMatrix eval_X(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  SymmetricMatrix X = p.eval_X(x);
  require(X.dim() == p.d, p.name + ": X(x) has wrong order");
  return X;
}

std::vector<SymmetricMatrix> eval_A_all(const NsdpProblem& p, const Vector& x) {
  check_x(p, x);
  std::vector<SymmetricMatrix> out;
  out.reserve(static_cast<std::size_t>(p.n));
  for (int j = 0; j < p.n; ++j) {
    out.push_back(p.eval_A(x, j));
    require(out.back().dim() == p.d, p.name + ": A_j(x) has wrong order");
  }
  return out;
}

PointEvaluation evaluate(const NsdpProblem& p, const Vector& x) {
  PointEvaluation ev;
  ev.x = x;
  ev.f = eval_f(p, x);
  ev.grad_f = eval_grad_f(p, x);
  ev.g = eval_g(p, x);
  ev.jac_g = eval_jac_g(p, x);
  ev.X = eval_X(p, x);
  ev.A = eval_A_all(p, x);
  return ev;
}

SymmetricMatrix apply_A(const std::vector<SymmetricMatrix>& a_mats, const Vector& u) {
  require(!a_mats.empty(), "apply_A: empty operator");
  require(u.size() == static_cast<Eigen::Index>(a_mats.size()), "apply_A: u has wrong length");
  SymmetricMatrix out = SymmetricMatrix::zero(a_mats.front().dim());
  for (std::size_t j = 0; j < a_mats.size(); ++j) out += u(static_cast<Eigen::Index>(j)) * a_mats[j];
  return out;
}

SymmetricMatrix apply_A(const NsdpProblem& p, const Vector& x, const Vector& u) {
  return apply_A(eval_A_all(p, x), u);
}

Vector apply_A_adjoint(const std::vector<SymmetricMatrix>& a_mats, const SymmetricMatrix& u) {
  Vector out(static_cast<Eigen::Index>(a_mats.size()));
  for (std::size_t j = 0; j < a_mats.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) = inner(a_mats[j], u);
  }
  return out;
}

Vector apply_A_adjoint(const NsdpProblem& p, const Vector& x, const SymmetricMatrix& u) {
  require(u.dim() == p.d, "apply_A_adjoint: U has wrong order");
  return apply_A_adjoint(eval_A_all(p, x), u);
}

Vector lagrangian_grad(const PointEvaluation& ev, const Vector& y, const SymmetricMatrix& z) {
  require(y.size() == ev.g.size(), "lagrangian_grad: y has wrong length");
  require(z.dim() == ev.X.dim(), "lagrangian_grad: Z has wrong order");
  return ev.grad_f - ev.jac_g * y - apply_A_adjoint(ev.A, z);
}

Vector lagrangian_grad(const NsdpProblem& p, const Vector& x, const Vector& y,
                       const SymmetricMatrix& z) {
  return lagrangian_grad(evaluate(p, x), y, z);
}

double lagrangian_value(const NsdpProblem& p, const Vector& x, const Vector& y,
                        const SymmetricMatrix& z) {
  require(y.size() == p.m, "lagrangian_value: y has wrong length");
  const Vector g = eval_g(p, x);
  return eval_f(p, x) - g.dot(y) - inner(eval_X(p, x), z);
}

Matrix hessian_or_approx(const NsdpProblem& p, const Vector& x, const Vector& y,
                         const SymmetricMatrix& z, double sigma, const HessianPolicy& policy) {
  return hessian_or_approx(p, x, y, z, eval_jac_g(p, x), sigma, policy);
}

Matrix hessian_or_approx(const NsdpProblem& p, const Vector& x, const Vector& y,
                         const SymmetricMatrix& z, const Matrix& jac_g, double sigma,
                         const HessianPolicy& policy) {
  if (!(sigma > 0.0)) throw ConfigurationError("hessian_or_approx: sigma must be positive");
  if (!(policy.nu1 > 0.0) || !(policy.nu2 >= policy.nu1)) {
    throw ConfigurationError("hessian_or_approx: need 0 < nu1 <= nu2");
  }

  Matrix h;
  if (policy.use_exact && p.eval_hess_lagrangian) {
    h = p.eval_hess_lagrangian(x, y, z);
    require(h.rows() == p.n && h.cols() == p.n, p.name + ": Hessian must be n x n");
    h = 0.5 * (h + h.transpose()).eval();
  } else if (policy.identity_fallback) {
    h = Matrix::Identity(p.n, p.n);
  } else {
    throw ConfigurationError(p.name + ": no Hessian oracle and identity fallback disabled");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> hes(h);
  if (hes.info() != Eigen::Success) throw NumericalError("hessian_or_approx: eigensolver failed");
  if (hes.eigenvalues().maxCoeff() > policy.nu2) {
    const Vector clipped = hes.eigenvalues().cwiseMin(policy.nu2);
    h = hes.eigenvectors() * clipped.asDiagonal() * hes.eigenvectors().transpose();
    h = 0.5 * (h + h.transpose()).eval();
  }

  Matrix m = h;
  if (jac_g.cols() > 0) m += jac_g * jac_g.transpose() / sigma;
  Eigen::SelfAdjointEigenSolver<Matrix> mes(m, Eigen::EigenvaluesOnly);
  if (mes.info() != Eigen::Success) throw NumericalError("hessian_or_approx: eigensolver failed");
  const double lam_min = mes.eigenvalues()(0);
  if (lam_min >= policy.nu1) return h;
  // Rounding margin so the bound survives an independent eigensolve.
  const double margin = 16.0 * std::numeric_limits<double>::epsilon() * mes.eigenvalues().cwiseAbs().maxCoeff();
  const double delta = policy.nu1 - lam_min + margin;
  if (hes.eigenvalues().maxCoeff() + delta <= policy.nu2) {
    h.diagonal().array() += delta;
    return h;
  }
  // The shift would break the upper bound: clamp the spectrum of H into [nu1, nu2].
  const Vector clamped = hes.eigenvalues().cwiseMax(policy.nu1 + margin).cwiseMin(policy.nu2);
  h = hes.eigenvectors() * clamped.asDiagonal() * hes.eigenvectors().transpose();
  return (0.5 * (h + h.transpose())).eval();
}

double DerivativeReport::max_error() const { return std::max({grad_f_error, jac_g_error, A_error}); }

DerivativeReport check_derivatives(const NsdpProblem& p, const Vector& x, double tolerance) {
  DerivativeReport rep;
  rep.tolerance = tolerance;

  const Vector grad_f = eval_grad_f(p, x);
  const Matrix jac_g = eval_jac_g(p, x);
  const auto a_mats = eval_A_all(p, x);

  auto flag = [&](const std::string& what, int j, double err) {
    if (err > tolerance) {
      std::ostringstream os;
      os << what << " component " << j << ": relative error " << err;
      rep.flagged.push_back(os.str());
    }
  };

  for (int j = 0; j < p.n; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
    Vector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    const double step = xp(j) - xm(j);

    const double dfd = (eval_f(p, xp) - eval_f(p, xm)) / step;
    const double ef = relative_error(grad_f(j), dfd);
    rep.grad_f_error = std::max(rep.grad_f_error, ef);
    flag("grad f", j, ef);

    if (p.m > 0) {
      const Vector dg = (eval_g(p, xp) - eval_g(p, xm)) / step;
      double eg = 0.0;
      for (int i = 0; i < p.m; ++i) eg = std::max(eg, relative_error(jac_g(j, i), dg(i)));
      rep.jac_g_error = std::max(rep.jac_g_error, eg);
      flag("jac g row", j, eg);
    }

    const Matrix dX = (eval_X(p, xp).matrix() - eval_X(p, xm).matrix()) / step;
    double ea = 0.0;
    for (int r = 0; r < p.d; ++r) {
      for (int c = 0; c < p.d; ++c) ea = std::max(ea, relative_error(a_mats[j](r, c), dX(r, c)));
    }
    rep.A_error = std::max(rep.A_error, ea);
    flag("A", j, ea);
  }
  return rep;
}

}  // namespace sqsdp
