#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqsdp/driver.hpp"

namespace sqsdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;

enum class ProblemKind { NoKkt, Degenerate, Random };

/// Parsed form of `no-kkt`, `degenerate:n_mat:seed` or `random:n:m:d:seed`.
struct ProblemSelector {
  ProblemKind kind = ProblemKind::NoKkt;
  int n_mat = 0;
  int n = 0;
  int m = 0;
  int d = 0;
  std::uint64_t seed = 0;
};

/// Throws ConfigurationError on a malformed selector.
ProblemSelector parse_selector(const std::string& text);
std::string to_string(const ProblemSelector& sel);
NsdpProblem make_problem(const ProblemSelector& sel);

/// Exit code for a finished solve: 0 on convergence, 2 on budget exhaustion, 1 otherwise.
int exit_code(SolveStatus status);

/// Average iterations and average / maximum / minimum final r.
struct BenchSummary {
  int count = 0;
  double avg_iterations = 0.0;
  double avg_r = 0.0;
  double max_r = 0.0;
  double min_r = 0.0;
};

BenchSummary summarize(const std::vector<SolveReport>& reports);

/**
 * Solves degenerate:n_mat:(seed_base + i) for i = 0, …, count − 1 on up to
 * `jobs` threads. Results are returned in seed order.
 */
std::vector<SolveReport> run_bench(int n_mat, int count, std::uint64_t seed_base,
                                   const SolverOptions& opts, int jobs);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqsdp::cli
