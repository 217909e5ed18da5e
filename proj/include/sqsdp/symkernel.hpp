#pragma once

#include <utility>

#include <Eigen/Core>

namespace sqsdp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
 * Dense real symmetric matrix.
 *
 * Entry (i, j) and entry (j, i) are bit-identical. Construction from an
 * arbitrary square matrix stores (A + Aᵀ) / 2; arithmetic between symmetric
 * values preserves exact symmetry without re-symmetrizing.
 */
class SymmetricMatrix {
 public:
  /// 1×1 zero.
  SymmetricMatrix() : m_(Matrix::Zero(1, 1)) {}

  /// Symmetrizes a square, non-empty matrix. Throws DimensionError otherwise.
  explicit SymmetricMatrix(const Matrix& a);

  static SymmetricMatrix zero(int dim);
  static SymmetricMatrix identity(int dim);
  static SymmetricMatrix diagonal(const Vector& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

  SymmetricMatrix operator-() const;
  SymmetricMatrix& operator+=(const SymmetricMatrix& rhs);
  SymmetricMatrix& operator-=(const SymmetricMatrix& rhs);
  SymmetricMatrix& operator*=(double s);

  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
  friend SymmetricMatrix operator*(SymmetricMatrix a, double s) { return a *= s; }
  friend SymmetricMatrix operator*(double s, SymmetricMatrix a) { return a *= s; }
  friend SymmetricMatrix operator/(SymmetricMatrix a, double s) { return a *= (1.0 / s); }

 private:
  struct Trusted {};
  SymmetricMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// Spectral decomposition A = P diag(λ) Pᵀ with λ in ascending order.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  /// P diag(f(λ_i)) Pᵀ for a caller-supplied spectral map.
  template <typename F>
  SymmetricMatrix reconstruct(F&& f) const {
    Vector mapped = eigenvalues.unaryExpr(std::forward<F>(f));
    return SymmetricMatrix(eigenvectors * mapped.asDiagonal() * eigenvectors.transpose());
  }
};

/// Number of free entries of a d×d symmetric matrix, d(d+1)/2.
constexpr int svec_length(int dim) { return dim * (dim + 1) / 2; }

/**
 * Isometric vectorization: lower triangle in column-major order, off-diagonal
 * entries scaled by √2, so that ⟨Y, Z⟩ = svec(Y)ᵀ svec(Z).
 */
Vector svec(const SymmetricMatrix& a);

/// Inverse of svec. Throws DimensionError if the length is not triangular.
SymmetricMatrix smat(const Vector& v);

/// Trace inner product ⟨A, B⟩ = tr(AB).
double inner(const SymmetricMatrix& a, const SymmetricMatrix& b);
double frobenius_norm(const SymmetricMatrix& a);

/// Throws NumericalError if the eigen iteration fails.
EigenDecomposition eig_sym(const SymmetricMatrix& a);

double lambda_min(const SymmetricMatrix& a);
double lambda_max(const SymmetricMatrix& a);

/// Frobenius projection onto the PSD cone, [A]_+.
SymmetricMatrix psd_project(const SymmetricMatrix& a);
SymmetricMatrix psd_project(const EigenDecomposition& eig);

/// (AB + BA) / 2.
SymmetricMatrix jordan_product(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// Projection onto {Z : 0 ⪯ Z ⪯ zmax·I} by clamping eigenvalues to [0, zmax].
SymmetricMatrix box_project_spectral(const SymmetricMatrix& a, double zmax);

/**
 * Directional derivative of [·]_+ at A along H (Löwner operator form).
 *
 * Eigenvalues closer than 1e-12·max(1, |d_i|, |d_j|) are treated as equal;
 * equal pairs use the indicator of d_i + d_j > 0, which keeps the
 * divided-difference matrix symmetric.
 */
SymmetricMatrix dpsd_project(const SymmetricMatrix& a, const SymmetricMatrix& h);

/// Same as above with A's decomposition already available.
SymmetricMatrix dpsd_project(const EigenDecomposition& eig, const SymmetricMatrix& h);

}  // namespace sqsdp
