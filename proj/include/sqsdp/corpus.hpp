#pragma once

#include <cstdint>
#include <random>

#include "sqsdp/model.hpp"

namespace sqsdp::corpus {

/**
 * Seeded uniform source used by every generated instance.
 *
 * std::mt19937_64 has a fully specified output sequence; doubles are built
 * from the top 53 bits so streams reproduce across platforms.
 */
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// minimize 2x s.t. [[0, −x], [−x, 1]] ⪰ 0. Feasible set {0}; no KKT point.
NsdpProblem problem_no_kkt();

/// Cost matrix of the degenerate family: i.i.d. uniform [−1, 1] entries, symmetrized.
SymmetricMatrix degenerate_cost(int n_mat, std::uint64_t seed);

/**
 * minimize ⟨C, X⟩ s.t. X_ii = 1, ⟨J, X⟩ = 0, X ⪰ 0 over X ∈ S^{n_mat},
 * with x = svec(X) (n = n_mat(n_mat+1)/2, m = n_mat + 1, d = n_mat).
 * Slater's condition fails for every C. Throws ConfigurationError if n_mat < 2.
 */
NsdpProblem problem_degenerate(int n_mat, std::uint64_t seed);

/// A generated instance together with its strictly feasible point.
struct RandomInstance {
  NsdpProblem problem;
  Vector feasible_point;
};

/**
 * Convex quadratic f, affine g and affine X with g(x₀) = 0 and
 * λ_min(X(x₀)) ≥ 0.1 at the recorded x₀. Requires 0 ≤ m ≤ n and n, d ≥ 1.
 */
RandomInstance problem_random_smooth(int n, int m, int d, std::uint64_t seed);

}  // namespace sqsdp::corpus
