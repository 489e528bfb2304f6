#include "naipm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "naipm/problem_io.hpp"
#include "naipm/solver.hpp"
#include "naipm/trace.hpp"

namespace naipm {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string power_name(int p) {
  if (p == 0) return "a^0";
  return p > 0 ? "a^" + std::to_string(p) : "n^" + std::to_string(-p);
}

// Compares every coefficient from the leading power of either value down to
// the lowest power written in the expectation.
void compare_ban(const std::string& what, const Ban& actual, const Ban& expected, double abs_tol,
                 double rel_tol, std::vector<std::string>& deltas) {
  const int low = expected.is_zero() ? 0 : expected.last_power();
  int high = low;
  if (!expected.is_zero()) high = std::max(high, expected.power());
  if (!actual.is_zero()) high = std::max(high, actual.power());
  for (int p = high; p >= low; --p) {
    const double a = actual.coeff_at_power(p);
    const double e = expected.coeff_at_power(p);
    const double tol = abs_tol + rel_tol * std::abs(e);
    if (!(std::abs(a - e) <= tol)) {
      deltas.push_back(what + " " + power_name(p) + ": got " + num(a) + ", expected " + num(e) +
                       " (delta " + num(a - e) + ", tol " + num(tol) + ")");
    }
  }
}

void compare_vector(const std::string& what, const BanVector& actual, const json& expected,
                    double tol, std::vector<std::string>& deltas) {
  if (actual.size() < expected.size()) {
    deltas.push_back(what + ": got " + std::to_string(actual.size()) + " entries, expected " +
                     std::to_string(expected.size()));
    return;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    compare_ban(what + "[" + std::to_string(i + 1) + "]", actual[i], parse_ban(expected[i].get<std::string>()),
                tol, 0.0, deltas);
  }
}

EmbedMode embed_mode(const json& c) {
  const std::string m = c.value("embed", "auto");
  if (m == "auto") return EmbedMode::Auto;
  if (m == "on") return EmbedMode::On;
  if (m == "off") return EmbedMode::Off;
  throw std::invalid_argument("unknown embed mode '" + m + "'");
}

BenchRow run_problem_case(const std::string& name, const json& c, const std::filesystem::path& dir) {
  BenchRow row;
  row.name = name;
  const LexProblem problem = load_problem(dir / c.at("problem").get<std::string>());
  SolverConfig cfg;
  cfg.max_it = c.value("max_it", cfg.max_it);
  SolveResult r;
  try {
    r = solve(problem, cfg, embed_mode(c));
  } catch (const SolverError& e) {
    row.status = "error";
    row.deltas.push_back(std::string("solver error: ") + e.what());
    return row;
  }
  row.status = to_string(r.status);
  row.iterations = r.iterations;
  auto& d = row.deltas;

  if (c.contains("status") && c["status"].get<std::string>() != row.status) {
    d.push_back("status: got " + row.status + ", expected " + c["status"].get<std::string>());
  }
  if (c.contains("max_iterations") && r.iterations > c["max_iterations"].get<int>()) {
    d.push_back("iterations: " + std::to_string(r.iterations) + " exceeds " +
                std::to_string(c["max_iterations"].get<int>()));
  }
  if (c.contains("x")) compare_vector("x", r.x_original, c["x"], c.value("x_tol", 1e-2), d);
  if (c.contains("objective")) {
    compare_ban("objective", r.objective, parse_ban(c["objective"].get<std::string>()),
                c.value("objective_tol", 0.0), c.value("objective_rel_tol", 0.0), d);
  }
  if (c.contains("staircase")) {
    const auto expected = c["staircase"].get<std::vector<int>>();
    const auto actual = mu_staircase(r);
    if (actual != expected) {
      std::string got;
      for (int p : actual) got += (got.empty() ? "" : " -> ") + power_name(p);
      std::string want;
      for (int p : expected) want += (want.empty() ? "" : " -> ") + power_name(p);
      d.push_back("mu staircase: got " + got + ", expected " + want);
    }
  }
  if (c.contains("artificial")) {
    if (!r.embedded) {
      d.push_back("artificial: problem was not embedded");
    } else {
      compare_ban("artificial", r.artificial, parse_ban(c["artificial"].get<std::string>()),
                  c.value("artificial_tol", 1e-6), 0.0, d);
    }
  }
  if (c.contains("bound_dual")) {
    if (!r.embedded) {
      d.push_back("bound_dual: problem was not embedded");
    } else {
      compare_ban("bound_dual", r.bound_dual, parse_ban(c["bound_dual"].get<std::string>()),
                  c.value("bound_dual_tol", 1e-6), 0.0, d);
    }
  }
  if (c.contains("lambda")) compare_vector("lambda", r.lambda, c["lambda"], c.value("lambda_tol", 1e-2), d);
  return row;
}

BanMatrix parse_matrix(const json& m) {
  BanMatrix out(m.size(), m.at(0).size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = parse_ban(m[i][j].get<std::string>());
  }
  return out;
}

BenchRow run_inverse_case(const std::string& name, const json& c) {
  BenchRow row;
  row.name = name;
  row.status = "inverse";
  ScopedBanLength len(c.at("ban_len").get<int>());
  const BanMatrix a = parse_matrix(c.at("matrix"));
  const BanMatrix residual = mat_mul(a, inverse(a)) - BanMatrix::identity(a.rows());
  Ban largest;
  for (std::size_t i = 0; i < residual.rows(); ++i) {
    for (std::size_t j = 0; j < residual.cols(); ++j) largest = max(largest, abs(residual(i, j)));
  }
  const int want = c.at("residual_power").get<int>();
  if (largest.is_zero() || largest.power() != want) {
    row.deltas.push_back("residual magnitude: got " + (largest.is_zero() ? "0" : power_name(largest.power())) +
                         ", expected " + power_name(want));
  }
  if (c.contains("residual")) {
    const BanMatrix expected = parse_matrix(c["residual"]);
    const double tol = c.value("residual_tol", 1e-6);
    for (std::size_t i = 0; i < expected.rows(); ++i) {
      for (std::size_t j = 0; j < expected.cols(); ++j) {
        compare_ban("residual(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", residual(i, j),
                    expected(i, j), tol, 0.0, row.deltas);
      }
    }
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::filesystem::path& expectations,
                                const std::optional<std::string>& only) {
  std::ifstream in(expectations);
  if (!in) throw std::runtime_error("cannot open " + expectations.string());
  const json doc = json::parse(in);
  const std::filesystem::path dir = expectations.parent_path();

  std::vector<BenchRow> rows;
  for (const auto& [name, c] : doc.at("cases").items()) {
    if (only && *only != name) continue;
    if (c.value("kind", "problem") == "inverse") {
      rows.push_back(run_inverse_case(name, c));
    } else {
      rows.push_back(run_problem_case(name, c, dir));
    }
  }
  if (only && rows.empty()) throw std::invalid_argument("no bench case named '" + *only + "'");
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "case" << std::setw(17) << "status" << std::setw(7) << "iters"
      << "result\n";
  for (const BenchRow& r : rows) {
    out << std::setw(18) << r.name << std::setw(17) << r.status << std::setw(7) << r.iterations
        << (r.passed() ? "pass" : "FAIL") << '\n';
    for (const std::string& d : r.deltas) out << "    " << d << '\n';
  }
  return out.str();
}

}  // namespace naipm
