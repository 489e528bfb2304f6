#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "naipm/bench.hpp"
#include "naipm/problem_io.hpp"
#include "naipm/solver.hpp"
#include "naipm/trace.hpp"

#ifndef NAIPM_FIXTURE_DIR
#define NAIPM_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace naipm;

struct RunConfig {
  std::string input;
  double eps = 1e-8;
  int max_it = 50;
  int ban_len = 5;
  std::string trace_path;
  std::string format = "table";
  std::string embed = "auto";
};

int exit_code(Status s) {
  switch (s) {
    case Status::Optimal: return 0;
    case Status::OriginalInfeasible: return 2;
    case Status::OriginalUnbounded: return 3;
    case Status::IterationLimit: return 4;
  }
  return 1;
}

EmbedMode parse_embed(const std::string& m) {
  if (m == "on") return EmbedMode::On;
  if (m == "off") return EmbedMode::Off;
  return EmbedMode::Auto;
}

void print_vector(const char* label, const BanVector& v) {
  std::cout << label << " = (";
  for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << format_fixed(v[i]);
  std::cout << ")\n";
}

int run_solve(const RunConfig& rc) {
  set_ban_length(rc.ban_len);
  const LexProblem problem = load_problem(rc.input);
  SolverConfig cfg;
  cfg.eps = rc.eps;
  cfg.max_it = rc.max_it;
  cfg.validate();
  const TraceFormat format = parse_trace_format(rc.format);

  const SolveResult r = solve(problem, cfg, parse_embed(rc.embed));
  const std::size_t levels = problem.objectives.size();
  const std::string trace = format_trace(r, levels, format);
  if (rc.trace_path.empty()) {
    std::cout << trace;
  } else {
    std::ofstream out(rc.trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + rc.trace_path);
    out << trace;
  }

  std::cout << "status: " << to_string(r.status) << " after " << r.iterations << " iterations"
            << (r.embedded ? " (embedded)" : "") << '\n';
  print_vector("x", r.x_original);
  std::cout << "f(x) = " << format_fixed(r.objective) << '\n';
  if (r.status != Status::Optimal && r.embedded) {
    std::cout << "artificial = " << format_fixed(r.artificial) << '\n';
    std::cout << "bound dual = " << format_fixed(r.bound_dual) << '\n';
    print_vector("lambda", r.lambda);
  }
  return exit_code(r.status);
}

int run_embed(const std::string& input, int ban_len) {
  set_ban_length(ban_len);
  const StandardForm form = to_standard_form(load_problem(input));
  std::cout << embedded_to_json(embed(form, estimate_weights(form))) << '\n';
  return 0;
}

int run_bench_cmd(const std::string& expectations, const std::optional<std::string>& only) {
  const auto rows = run_bench(expectations, only);
  std::cout << format_bench(rows);
  for (const BenchRow& r : rows) {
    if (!r.passed()) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicographic LP/QP solver over non-Archimedean numbers"};
  app.require_subcommand(1);

  RunConfig rc;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file and print the iteration trace");
  solve_cmd->add_option("file", rc.input, "Problem file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--eps", rc.eps, "Convergence threshold")->capture_default_str();
  solve_cmd->add_option("--max-it", rc.max_it, "Iteration limit")->capture_default_str();
  solve_cmd->add_option("--ban-len", rc.ban_len, "Monosemia per number")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  solve_cmd->add_option("--trace", rc.trace_path, "Write the trace to this file");
  solve_cmd->add_option("--format", rc.format, "Trace format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  solve_cmd->add_option("--embed", rc.embed, "auto: embed only when the direct solve fails")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();

  std::string expectations = std::string(NAIPM_FIXTURE_DIR) + "/expectations.json";
  std::optional<std::string> only;
  auto* bench_cmd = app.add_subcommand("bench", "Run the bundled fixtures against stored expectations");
  bench_cmd->add_option("--only", only, "Run a single case");
  bench_cmd->add_option("--expectations", expectations, "Expectations file")->capture_default_str();

  std::string embed_input;
  int embed_len = 5;
  auto* embed_cmd = app.add_subcommand("embed", "Print the embedded problem");
  embed_cmd->add_option("file", embed_input, "Problem file")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("--ban-len", embed_len, "Monosemia per number")->check(CLI::Range(1, 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) return run_solve(rc);
    if (*bench_cmd) return run_bench_cmd(expectations, only);
    if (*embed_cmd) return run_embed(embed_input, embed_len);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
