#pragma once

// Reference computations for the test suites. Nothing here calls the
// library's eigen routines or projections.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Vec vector(int n, double scale = 1.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(-scale, scale);
    return v;
  }

  Mat symmetric(int d, double scale = 1.0) {
    Mat a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = uniform(-scale, scale);
    }
    return a;
  }

  /// BᵀB/d + shift·I.
  Mat spd(int d, double shift) {
    Mat b(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) b(i, j) = uniform(-1.0, 1.0);
    }
    return b.transpose() * b / d + shift * Mat::Identity(d, d);
  }

 private:
  std::mt19937_64 engine_;
};

/// Cyclic Jacobi rotations. Eigenvalues ascending, eigenvectors in columns.
inline std::pair<Vec, Mat> jacobi_eigen(Mat a) {
  const auto d = a.rows();
  Mat v = Mat::Identity(d, d);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index i = 0; i < d; ++i) order.emplace_back(a(i, i), i);
  std::sort(order.begin(), order.end());
  Vec vals(d);
  Mat vecs(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    vals(i) = order[static_cast<std::size_t>(i)].first;
    vecs.col(i) = v.col(order[static_cast<std::size_t>(i)].second);
  }
  return {vals, vecs};
}

inline Mat psd_part(const Mat& a) {
  const auto [vals, vecs] = jacobi_eigen(a);
  return vecs * vals.cwiseMax(0.0).asDiagonal() * vecs.transpose();
}

/// Closed-form PSD projection of a symmetric 2×2 matrix.
inline Mat psd_part_2x2(const Mat& a) {
  const double p = a(0, 0), q = a(0, 1), r = a(1, 1);
  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), q);
  const double l1 = mean - rad, l2 = mean + rad;
  if (l1 >= 0.0) return a;
  if (l2 <= 0.0) return Mat::Zero(2, 2);
  // Only l2 survives; its eigenprojector is (A − l1 I)/(l2 − l1).
  return l2 * (a - l1 * Mat::Identity(2, 2)) / (l2 - l1);
}

inline double trace_inner(const Mat& a, const Mat& b) { return (a * b).trace(); }

/// Central difference of a scalar function along each coordinate.
inline Vec central_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  Vec g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
    Vec xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    g(j) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

/// max_j |a_j − b_j| / max(1, |b_j|).
inline double relative_error(const Vec& a, const Vec& b) {
  double e = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    e = std::max(e, std::abs(a(j) - b(j)) / std::max(1.0, std::abs(b(j))));
  }
  return e;
}

}  // namespace oracle
