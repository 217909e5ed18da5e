#include "sqsdp/corpus.hpp"

#include <string>

#include "sqsdp/errors.hpp"

namespace sqsdp::corpus {

namespace {

SymmetricMatrix random_symmetric(UniformSource& rng, int dim, double scale) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = scale * rng.uniform(-1.0, 1.0);
  }
  return SymmetricMatrix(a);
}

/// Position of entry (j, j) in svec order.
int svec_diagonal_index(int dim, int j) { return j * dim - j * (j - 1) / 2; }

}  // namespace

NsdpProblem problem_no_kkt() {
  NsdpProblem p;
  p.name = "no-kkt";
  p.n = 1;
  p.m = 0;
  p.d = 2;
  p.eval_f = [](const Vector& x) { return 2.0 * x(0); };
  p.eval_grad_f = [](const Vector&) { return Vector::Constant(1, 2.0); };
  p.eval_g = [](const Vector&) { return Vector(0); };
  p.eval_jac_g = [](const Vector&) { return Matrix(1, 0); };
  p.eval_X = [](const Vector& x) {
    Matrix m(2, 2);
    m << 0.0, -x(0), -x(0), 1.0;
    return SymmetricMatrix(m);
  };
  p.eval_A = [](const Vector&, int) {
    Matrix m(2, 2);
    m << 0.0, -1.0, -1.0, 0.0;
    return SymmetricMatrix(m);
  };
  p.eval_hess_lagrangian = [](const Vector&, const Vector&, const SymmetricMatrix&) {
    return Matrix::Zero(1, 1).eval();
  };
  return p;
}

SymmetricMatrix degenerate_cost(int n_mat, std::uint64_t seed) {
  if (n_mat < 2) throw ConfigurationError("degenerate problem needs n_mat >= 2");
  UniformSource rng(seed);
  return random_symmetric(rng, n_mat, 1.0);
}

NsdpProblem problem_degenerate(int n_mat, std::uint64_t seed) {
  const SymmetricMatrix cost = degenerate_cost(n_mat, seed);
  const int n = svec_length(n_mat);
  const int m = n_mat + 1;

  const Vector c = svec(cost);
  Matrix jac = Matrix::Zero(n, m);
  for (int i = 0; i < n_mat; ++i) jac(svec_diagonal_index(n_mat, i), i) = 1.0;
  jac.col(n_mat) = svec(SymmetricMatrix(Matrix::Ones(n_mat, n_mat)));

  NsdpProblem p;
  p.name = "degenerate:" + std::to_string(n_mat) + ":" + std::to_string(seed);
  p.n = n;
  p.m = m;
  p.d = n_mat;
  p.eval_f = [c](const Vector& x) { return c.dot(x); };
  p.eval_grad_f = [c](const Vector&) { return c; };
  p.eval_g = [jac, n_mat](const Vector& x) {
    Vector g = jac.transpose() * x;
    g.head(n_mat).array() -= 1.0;
    return g;
  };
  p.eval_jac_g = [jac](const Vector&) { return jac; };
  p.eval_X = [](const Vector& x) { return smat(x); };
  p.eval_A = [n](const Vector&, int j) { return smat(Vector::Unit(n, j)); };
  p.eval_hess_lagrangian = [n](const Vector&, const Vector&, const SymmetricMatrix&) {
    return Matrix::Zero(n, n).eval();
  };
  return p;
}

RandomInstance problem_random_smooth(int n, int m, int d, std::uint64_t seed) {
  if (n < 1 || d < 1 || m < 0 || m > n) {
    throw ConfigurationError("problem_random_smooth: need n, d >= 1 and 0 <= m <= n");
  }
  UniformSource rng(seed);

  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
  }
  const Matrix q = (b.transpose() * b / n + 0.5 * Matrix::Identity(n, n)).eval();
  Vector lin(n), x0(n);
  for (int i = 0; i < n; ++i) lin(i) = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i) x0(i) = rng.uniform(-1.0, 1.0);

  Matrix jac(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) jac(i, j) = rng.uniform(-1.0, 1.0);
  }
  const Vector rhs = jac.transpose() * x0;

  // ‖E‖₂ ≤ ‖E‖_F ≤ 0.9, hence λ_min(I + E) ≥ 0.1.
  const SymmetricMatrix base = SymmetricMatrix::identity(d) + random_symmetric(rng, d, 0.9 / d);
  std::vector<SymmetricMatrix> a_mats;
  for (int j = 0; j < n; ++j) a_mats.push_back(random_symmetric(rng, d, 1.0));

  NsdpProblem p;
  p.name = "random:" + std::to_string(n) + ":" + std::to_string(m) + ":" + std::to_string(d) + ":" +
           std::to_string(seed);
  p.n = n;
  p.m = m;
  p.d = d;
  p.eval_f = [q, lin](const Vector& x) { return 0.5 * x.dot(q * x) + lin.dot(x); };
  p.eval_grad_f = [q, lin](const Vector& x) { return (q * x + lin).eval(); };
  p.eval_g = [jac, rhs](const Vector& x) { return (jac.transpose() * x - rhs).eval(); };
  p.eval_jac_g = [jac](const Vector&) { return jac; };
  p.eval_X = [base, a_mats, x0](const Vector& x) { return base + apply_A(a_mats, x - x0); };
  p.eval_A = [a_mats](const Vector&, int j) { return a_mats[static_cast<std::size_t>(j)]; };
  p.eval_hess_lagrangian = [q](const Vector&, const Vector&, const SymmetricMatrix&) { return q; };
  return {std::move(p), std::move(x0)};
}

}  // namespace sqsdp::corpus
