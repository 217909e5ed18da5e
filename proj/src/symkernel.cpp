#include "sqsdp/symkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "sqsdp/errors.hpp"

namespace sqsdp {

namespace {

void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError("SymmetricMatrix: expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  // (a_ij + a_ji) and (a_ji + a_ij) round identically.
  m_ = 0.5 * (a + a.transpose());
}

SymmetricMatrix SymmetricMatrix::zero(int dim) {
  if (dim < 1) throw DimensionError("SymmetricMatrix: dim must be >= 1");
  return SymmetricMatrix(Matrix::Zero(dim, dim), Trusted{});
}

SymmetricMatrix SymmetricMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("SymmetricMatrix: dim must be >= 1");
  return SymmetricMatrix(Matrix::Identity(dim, dim), Trusted{});
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& diag) {
  if (diag.size() < 1) throw DimensionError("SymmetricMatrix: empty diagonal");
  return SymmetricMatrix(Matrix(diag.asDiagonal()), Trusted{});
}

SymmetricMatrix SymmetricMatrix::operator-() const { return SymmetricMatrix(-m_, Trusted{}); }

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  m_ += rhs.m_;
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  m_ -= rhs.m_;
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

Vector svec(const SymmetricMatrix& a) {
  const int d = a.dim();
  Vector v(svec_length(d));
  int k = 0;
  for (int j = 0; j < d; ++j) {
    v(k++) = a(j, j);
    for (int i = j + 1; i < d; ++i) v(k++) = std::numbers::sqrt2 * a(i, j);
  }
  return v;
}

SymmetricMatrix smat(const Vector& v) {
  const auto len = v.size();
  int d = 0;
  while (svec_length(d) < len) ++d;
  if (len == 0 || svec_length(d) != len) {
    throw DimensionError("smat: length " + std::to_string(len) + " is not of the form d(d+1)/2");
  }
  Matrix m(d, d);
  int k = 0;
  for (int j = 0; j < d; ++j) {
    m(j, j) = v(k++);
    for (int i = j + 1; i < d; ++i) {
      m(i, j) = v(k++) / std::numbers::sqrt2;
      m(j, i) = m(i, j);
    }
  }
  return SymmetricMatrix(m);
}

double inner(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "inner");
  return svec(a).dot(svec(b));
}

double frobenius_norm(const SymmetricMatrix& a) { return svec(a).norm(); }

EigenDecomposition eig_sym(const SymmetricMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw NumericalError("eig_sym: eigenvalue iteration failed (dim " + std::to_string(a.dim()) +
                         ", ||A||_F = " + std::to_string(a.matrix().norm()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_min(const SymmetricMatrix& a) { return eig_sym(a).eigenvalues(0); }

double lambda_max(const SymmetricMatrix& a) {
  const auto eig = eig_sym(a);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

SymmetricMatrix psd_project(const EigenDecomposition& eig) {
  return eig.reconstruct([](double l) { return std::max(l, 0.0); });
}

SymmetricMatrix psd_project(const SymmetricMatrix& a) { return psd_project(eig_sym(a)); }

SymmetricMatrix jordan_product(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "jordan_product");
  const Matrix ab = a.matrix() * b.matrix();
  return SymmetricMatrix(ab);  // (AB + (AB)ᵀ)/2 = (AB + BA)/2
}

SymmetricMatrix box_project_spectral(const SymmetricMatrix& a, double zmax) {
  if (!(zmax > 0.0)) throw ConfigurationError("box_project_spectral: zmax must be positive");
  return eig_sym(a).reconstruct([zmax](double l) { return std::clamp(l, 0.0, zmax); });
}

SymmetricMatrix dpsd_project(const EigenDecomposition& eig, const SymmetricMatrix& h) {
  const auto d = eig.eigenvalues.size();
  if (h.dim() != d) throw DimensionError("dpsd_project: dimension mismatch");
  const Vector& lam = eig.eigenvalues;
  const Matrix& u = eig.eigenvectors;

  Matrix omega(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double di = lam(i), dj = lam(j);
      const double scale = std::max({1.0, std::abs(di), std::abs(dj)});
      if (std::abs(di - dj) <= 1e-12 * scale) {
        omega(i, j) = di + dj > 0.0 ? 1.0 : 0.0;
      } else {
        omega(i, j) = (std::max(di, 0.0) - std::max(dj, 0.0)) / (di - dj);
      }
    }
  }
  const Matrix rotated = u.transpose() * h.matrix() * u;
  return SymmetricMatrix(u * omega.cwiseProduct(rotated) * u.transpose());
}

SymmetricMatrix dpsd_project(const SymmetricMatrix& a, const SymmetricMatrix& h) {
  if (a.dim() != h.dim()) throw DimensionError("dpsd_project: dimension mismatch");
  return dpsd_project(eig_sym(a), h);
}

}  // namespace sqsdp
