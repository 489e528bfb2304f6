#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "naipm/bench.hpp"
#include "naipm/problem_io.hpp"
#include "naipm/trace.hpp"

using namespace naipm;

namespace {

const std::filesystem::path kFixtures = NAIPM_FIXTURE_DIR;

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "naipm_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NAIPM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void same_trace(const Trace& a, const Trace& b) {
  REQUIRE(a.levels == b.levels);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].iter == b.rows[k].iter);
    CHECK(a.rows[k].mu.identical(b.rows[k].mu));
    REQUIRE(a.rows[k].x.size() == b.rows[k].x.size());
    for (std::size_t i = 0; i < a.rows[k].x.size(); ++i) CHECK(a.rows[k].x[i].identical(b.rows[k].x[i]));
    CHECK(a.rows[k].f_levels == b.rows[k].f_levels);
  }
}

}  // namespace

TEST_CASE("problem documents") {
  const LexProblem p = load_problem(kFixtures / "exp4.json");
  CHECK(p.objectives.size() == 3);
  CHECK(p.bounds[0] == Bound::Free);
  CHECK(p.objectives[1].q(2, 2) == Ban(4.0));

  const LexProblem back = parse_problem(problem_to_json(p));
  CHECK(problem_to_json(back) == problem_to_json(p));

  const LexProblem defaults = parse_problem(R"({"objectives": [{"c": ["1"]}],
    "constraints": [{"a": ["1"], "rel": "=", "b": "2a"}]})");
  CHECK(defaults.sense == Sense::Minimize);
  CHECK(defaults.bounds == std::vector<Bound>{Bound::NonNegative});
  CHECK(defaults.constraints[0].b.identical(parse_ban("2a")));
}

TEST_CASE("malformed documents name the place of the error") {
  try {
    parse_problem("{\n  \"objectives\": [\n    {\"c\": [\"1\"]\n  ]\n}");
    FAIL("expected a syntax error");
  } catch (const ProblemFormatError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  try {
    parse_problem(R"({"objectives": [{"c": ["1+"]}], "constraints": []})");
    FAIL("expected a literal error");
  } catch (const ProblemFormatError& e) {
    CHECK(std::string(e.what()).find("objectives[0].c[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem(R"({"objectives": [], "constraints": []})"), ProblemFormatError);
  CHECK_THROWS_AS(parse_problem(R"({"objectives": [{"c": ["1"]}]})"), ProblemFormatError);
  CHECK_THROWS_AS(parse_problem(R"({"objectives": [{"c": ["1"]}],
    "constraints": [{"a": ["1"], "rel": "<>", "b": "1"}]})"),
                  ProblemFormatError);
  CHECK_THROWS_AS(load_problem(kFixtures / "missing.json"), ProblemFormatError);
}

TEST_CASE("traces round-trip through csv and json") {
  for (const char* name : {"exp1.json", "exp2_unbounded.json", "exp4.json"}) {
    const LexProblem p = load_problem(kFixtures / name);
    const SolveResult r = solve(p);
    const Trace t = make_trace(r, p.objectives.size());
    REQUIRE(!t.rows.empty());
    same_trace(trace_from_csv(trace_to_csv(t)), t);
    same_trace(trace_from_json(trace_to_json(t)), t);
  }
}

TEST_CASE("csv layout") {
  const LexProblem p = load_problem(kFixtures / "exp1.json");
  const std::string csv = trace_to_csv(make_trace(solve(p), 2));
  CHECK(csv.rfind("iter,mu,x1,x2,f_level_0,f_level_1\n", 0) == 0);
  CHECK_THROWS_AS(trace_from_csv("iter,mu,x1\n0,1\n"), TraceFormatError);
  CHECK_THROWS_AS(trace_from_csv("iter,mu,x1\n0,1,2q\n"), TraceFormatError);
  CHECK_THROWS_AS(trace_from_json("{\"rows\": 3}"), TraceFormatError);
}

TEST_CASE("json traces are deterministic") {
  const LexProblem p = load_problem(kFixtures / "exp3.json");
  CHECK(format_trace(solve(p), 2, TraceFormat::Json) == format_trace(solve(p), 2, TraceFormat::Json));
}

TEST_CASE("staircase of mu magnitudes") {
  const SolveResult r = solve(load_problem(kFixtures / "exp1.json"));
  CHECK(mu_staircase(r) == std::vector<int>{0, -1});
}

TEST_CASE("bench selects one case") {
  const auto rows = run_bench(kFixtures / "expectations.json", std::string("exp3"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "exp3");
  CHECK(rows[0].passed());
  CHECK_THROWS_AS(run_bench(kFixtures / "expectations.json", std::string("nope")), std::invalid_argument);
}

TEST_CASE("bench reports deltas for tampered expectations") {
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(read_file(kFixtures / "expectations.json"));
  auto& c = doc["cases"]["exp1"];
  c["problem"] = (kFixtures / "exp1.json").string();
  c["x"] = {"31", "50"};
  const auto path = scratch_dir() / "tampered.json";
  std::ofstream(path) << doc.dump(2);
  const auto rows = run_bench(path, std::string("exp1"));
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].passed());
  REQUIRE(rows[0].deltas.size() == 1);
  CHECK(rows[0].deltas[0].find("x[1] a^0") != std::string::npos);
  CHECK(format_bench(rows).find("FAIL") != std::string::npos);
}

TEST_CASE("command line exit codes") {
  const std::string fx = kFixtures.string() + "/";
  CHECK(run_cli("solve " + fx + "exp1.json") == 0);
  CHECK(run_cli("solve " + fx + "exp2_infeasible.json") == 2);
  CHECK(run_cli("solve " + fx + "exp2_unbounded.json") == 3);
  CHECK(run_cli("solve " + fx + "exp1.json --max-it 2 --embed off") == 4);
  CHECK(run_cli("solve " + fx + "missing.json") == 1);
  CHECK(run_cli("solve " + fx + "exp1.json --format xml") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("embed " + fx + "exp2_unbounded.json") == 0);
  CHECK(run_cli("bench --only exp1") == 0);

  const auto empty = scratch_dir() / "empty_objectives.json";
  std::ofstream(empty) << R"({"objectives": [], "constraints": [{"a": ["1"], "rel": "<=", "b": "1"}]})";
  CHECK(run_cli("solve " + empty.string()) == 1);

  const auto trace = scratch_dir() / "exp1_trace.csv";
  CHECK(run_cli("solve " + fx + "exp1.json --format csv --trace " + trace.string()) == 0);
  const Trace t = trace_from_csv(read_file(trace));
  CHECK(t.rows.back().x[0].lead() == doctest::Approx(30.0).epsilon(1e-6));
}
