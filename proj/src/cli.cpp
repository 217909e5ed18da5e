#include "sqsdp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqsdp/corpus.hpp"

namespace sqsdp::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& field, const std::string& whole) {
  T value{};
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ConfigurationError("malformed problem selector '" + whole + "'");
  }
  return value;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json report_json(const std::string& problem, const SolveReport& rep) {
  std::string tags;
  for (const TraceRow& row : rep.trace) tags.push_back(row.step_tag);
  return json{
      {"problem", problem},
      {"status", std::string(to_string(rep.status))},
      {"iterations", rep.iterations},
      {"r", rep.r},
      {"rV", rep.rV},
      {"rO", rep.rO},
      {"cakkt", rep.cakkt},
      {"grad_F_norm", rep.grad_F_norm},
      {"wall_time_seconds", rep.wall_time_seconds},
      {"message", rep.message},
      {"step_tags", tags},
      {"final_iterate",
       {{"k", rep.final_iterate.k},
        {"x", vector_json(rep.final_iterate.x)},
        {"y", vector_json(rep.final_iterate.y)},
        {"Z", matrix_json(rep.final_iterate.Z.matrix())},
        {"phi", rep.final_iterate.control.phi},
        {"psi", rep.final_iterate.control.psi},
        {"gamma", rep.final_iterate.control.gamma},
        {"sigma", rep.final_iterate.control.sigma}}},
  };
}

json summary_json(const BenchSummary& s) {
  return json{{"count", s.count},
              {"avg_iterations", s.avg_iterations},
              {"avg_r", s.avg_r},
              {"max_r", s.max_r},
              {"min_r", s.min_r}};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string trace_csv(const SolveReport& rep) {
  std::ostringstream s;
  write_trace_csv(rep, s);
  return s.str();
}

void print_solve_summary(std::ostream& out, const std::string& problem, const SolveReport& rep) {
  out << "problem     " << problem << '\n'
      << "status      " << to_string(rep.status) << '\n'
      << "iterations  " << rep.iterations << '\n'
      << "r           " << fmt("%.6e", rep.r) << '\n'
      << "rV          " << fmt("%.6e", rep.rV) << '\n'
      << "rO          " << fmt("%.6e", rep.rO) << '\n'
      << "cakkt       " << fmt("%.6e", rep.cakkt) << '\n'
      << "time [s]    " << fmt("%.3f", rep.wall_time_seconds) << '\n';
  if (!rep.message.empty()) out << "message     " << rep.message << '\n';
}

struct Settings {
  SolverOptions opts;
  std::string problem;
  std::int64_t seed = -1;
  std::string out_trace;
  std::string out_report;
  int jobs = 1;
  int n_mat = 5;
  int count = 10;
  bool verbose = false;
};

int cmd_solve(const Settings& s, std::ostream& out) {
  ProblemSelector sel = parse_selector(s.problem);
  if (s.seed >= 0) sel.seed = static_cast<std::uint64_t>(s.seed);
  const NsdpProblem p = make_problem(sel);
  const std::string name = to_string(sel);

  const SolveReport rep = solve(p, s.opts);
  print_solve_summary(out, name, rep);
  if (s.verbose) out << trace_csv(rep);
  if (!s.out_trace.empty()) write_file(s.out_trace, trace_csv(rep));
  if (!s.out_report.empty()) write_file(s.out_report, report_json(name, rep).dump(2) + "\n");
  return exit_code(rep.status);
}

int cmd_bench(const Settings& s, std::ostream& out) {
  if (s.n_mat < 2) throw ConfigurationError("--n-mat must be at least 2");
  if (s.count < 1) throw ConfigurationError("--count must be at least 1");
  const std::uint64_t base = s.seed >= 0 ? static_cast<std::uint64_t>(s.seed) : 1;
  const std::vector<SolveReport> reports = run_bench(s.n_mat, s.count, base, s.opts, s.jobs);

  bool aborted = false;
  json per_instance = json::array();
  out << "seed  status             iters  r\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const SolveReport& rep = reports[i];
    const std::uint64_t seed = base + i;
    aborted = aborted || !is_normal_stop(rep.status);
    char line[128];
    std::snprintf(line, sizeof line, "%-5llu %-18s %5d  %.3e\n", static_cast<unsigned long long>(seed),
                  std::string(to_string(rep.status)).c_str(), rep.iterations, rep.r);
    out << line;
    const std::string name = "degenerate:" + std::to_string(s.n_mat) + ":" + std::to_string(seed);
    per_instance.push_back(report_json(name, rep));
    if (!s.out_trace.empty()) {
      std::filesystem::create_directories(s.out_trace);
      const auto path = std::filesystem::path(s.out_trace) /
                        ("degenerate_" + std::to_string(s.n_mat) + "_" + std::to_string(seed) + ".csv");
      write_file(path.string(), trace_csv(rep));
    }
  }

  const BenchSummary sum = summarize(reports);
  out << "\nn_mat = " << s.n_mat << ", instances = " << sum.count << '\n'
      << "average iterations  " << fmt("%.1f", sum.avg_iterations) << '\n'
      << "average r           " << fmt("%.2e", sum.avg_r) << '\n'
      << "maximum r           " << fmt("%.2e", sum.max_r) << '\n'
      << "minimum r           " << fmt("%.2e", sum.min_r) << '\n';
  if (!s.out_report.empty()) {
    const json doc{{"n_mat", s.n_mat}, {"summary", summary_json(sum)}, {"instances", per_instance}};
    write_file(s.out_report, doc.dump(2) + "\n");
  }
  return aborted ? kExitError : kExitOk;
}

}  // namespace

ProblemSelector parse_selector(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  ProblemSelector sel;
  if (parts.size() == 1 && parts[0] == "no-kkt") {
    sel.kind = ProblemKind::NoKkt;
  } else if (parts.size() == 3 && parts[0] == "degenerate") {
    sel.kind = ProblemKind::Degenerate;
    sel.n_mat = parse_number<int>(parts[1], text);
    sel.seed = parse_number<std::uint64_t>(parts[2], text);
    if (sel.n_mat < 2) throw ConfigurationError("degenerate selector needs n_mat >= 2");
  } else if (parts.size() == 5 && parts[0] == "random") {
    sel.kind = ProblemKind::Random;
    sel.n = parse_number<int>(parts[1], text);
    sel.m = parse_number<int>(parts[2], text);
    sel.d = parse_number<int>(parts[3], text);
    sel.seed = parse_number<std::uint64_t>(parts[4], text);
    if (sel.n < 1 || sel.d < 1 || sel.m < 0 || sel.m > sel.n) {
      throw ConfigurationError("random selector needs n, d >= 1 and 0 <= m <= n");
    }
  } else {
    throw ConfigurationError("malformed problem selector '" + text +
                             "' (expected no-kkt, degenerate:n_mat:seed or random:n:m:d:seed)");
  }
  return sel;
}

std::string to_string(const ProblemSelector& sel) {
  switch (sel.kind) {
    case ProblemKind::NoKkt: return "no-kkt";
    case ProblemKind::Degenerate:
      return "degenerate:" + std::to_string(sel.n_mat) + ":" + std::to_string(sel.seed);
    case ProblemKind::Random:
      return "random:" + std::to_string(sel.n) + ":" + std::to_string(sel.m) + ":" +
             std::to_string(sel.d) + ":" + std::to_string(sel.seed);
  }
  return {};
}

NsdpProblem make_problem(const ProblemSelector& sel) {
  switch (sel.kind) {
    case ProblemKind::NoKkt: return corpus::problem_no_kkt();
    case ProblemKind::Degenerate: return corpus::problem_degenerate(sel.n_mat, sel.seed);
    case ProblemKind::Random: return corpus::problem_random_smooth(sel.n, sel.m, sel.d, sel.seed).problem;
  }
  throw ConfigurationError("unknown problem kind");
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::ResidualConverged:
    case SolveStatus::GammaConverged: return kExitOk;
    case SolveStatus::MaxIterations: return kExitBudget;
    default: return kExitError;
  }
}

BenchSummary summarize(const std::vector<SolveReport>& reports) {
  BenchSummary s;
  s.count = static_cast<int>(reports.size());
  if (reports.empty()) return s;
  s.min_r = reports.front().r;
  s.max_r = reports.front().r;
  for (const SolveReport& rep : reports) {
    s.avg_iterations += rep.iterations;
    s.avg_r += rep.r;
    s.min_r = std::min(s.min_r, rep.r);
    s.max_r = std::max(s.max_r, rep.r);
  }
  s.avg_iterations /= s.count;
  s.avg_r /= s.count;
  return s;
}

std::vector<SolveReport> run_bench(int n_mat, int count, std::uint64_t seed_base,
                                   const SolverOptions& opts, int jobs) {
  std::vector<SolveReport> reports(static_cast<std::size_t>(std::max(count, 0)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reports.size(); i = next++) {
      reports[i] = solve(corpus::problem_degenerate(n_mat, seed_base + i), opts);
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(count, 1));
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return reports;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stabilized SQSDP solver for nonlinear semidefinite programs", "sqsdp"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value file with option defaults; flags take precedence")
      ->envname("SQSDP_DEFAULTS");

  Settings s;
  app.add_option("--k-max", s.opts.k_max, "Outer iteration budget")->capture_default_str();
  app.add_option("--epsilon", s.opts.epsilon, "Stopping tolerance on r and gamma")->capture_default_str();
  app.add_option("--sigma0", s.opts.sigma0, "Initial penalty parameter")->capture_default_str();
  app.add_option("--gamma0", s.opts.gamma0, "Initial merit threshold")->capture_default_str();
  app.add_option("--seed", s.seed, "Seed override (solve) or first seed (bench)");
  app.add_option("--out-trace", s.out_trace, "Trace CSV path (solve) or directory (bench)");
  app.add_option("--out-report", s.out_report, "JSON report path");
  app.add_option("--jobs", s.jobs, "Worker threads for bench")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("-v,--verbose", s.verbose, "Print the trace after a solve");

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem instance");
  solve_cmd->fallthrough();
  solve_cmd->add_option("--problem", s.problem, "no-kkt | degenerate:n_mat:seed | random:n:m:d:seed")
      ->required();

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the seeded degenerate benchmark");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--n-mat", s.n_mat, "Matrix order of the degenerate family")->capture_default_str();
  bench_cmd->add_option("--count", s.count, "Number of seeded instances")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    s.opts.validate();
    if (solve_cmd->parsed()) return cmd_solve(s, out);
    return cmd_bench(s, out);
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace sqsdp::cli
