#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <limits>

#include "naipm/problem_io.hpp"
#include "naipm/solver.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace naipm;
using namespace naipm::testing;

namespace {

const std::filesystem::path kFixtures = NAIPM_FIXTURE_DIR;

}  // namespace

TEST_CASE("step length ratio test") {
  CHECK(step_length(BanVector{1, 2}, BanVector{0, 1}, 0.99) == Ban(0.99));
  CHECK(step_length(BanVector{1}, BanVector{-2}, 0.99) == Ban(0.495));
  const Ban nu = step_length(BanVector{1, Ban::eta()}, BanVector{-1, -1}, 0.99);
  CHECK(nu.identical(Ban::monomial(0.99, -1)));
}

TEST_CASE("centering parameter") {
  CHECK(mehrotra_sigma(Ban(2.0), Ban(2.0)) == Ban(1.0));
  CHECK(mehrotra_sigma(Ban(2.0), Ban(1.0)) == Ban(0.125));
  const Ban sigma = mehrotra_sigma(parse_ban("1+n"), Ban(0.1));
  CHECK(sigma.power() == 0);
  CHECK(sigma.lead() == doctest::Approx(1e-3));
  CHECK(sigma.is_real());
}

TEST_CASE("convergence test per level") {
  CHECK(check_convergence(parse_ban("1e-9+1e-9n"), 2, 1e-8));
  CHECK_FALSE(check_convergence(Ban(0.5), 1, 1e-8));
  CHECK_FALSE(check_convergence(parse_ban("1e-9+0.3n"), 2, 1e-8));
  CHECK(check_convergence(parse_ban("1e-9+0.3n"), 1, 1e-8));
  CHECK_FALSE(check_convergence(parse_ban("1e-12a"), 1, 1e-8));
  CHECK(check_convergence(Ban(), 3, 1e-8));
}

TEST_CASE("starting point is interior") {
  StandardForm p;
  p.a = BanMatrix::identity(2);
  p.b = BanVector{1, 1};
  p.c = BanVector{1, 1};
  p.q = BanMatrix(2, 2);
  const StartingPoint sp = starting_point(p);
  CHECK(sp.x[0] == Ban(1.0));
  CHECK(sp.x[1] == Ban(1.0));
  for (const Ban& v : sp.s) CHECK(v > Ban(0.0));

  for (const char* name : {"exp1.json", "exp2_unbounded.json", "exp3.json", "exp4.json"}) {
    const StandardForm sf = to_standard_form(load_problem(kFixtures / name));
    for (const StandardForm& f : {sf, embed(sf, estimate_weights(sf)).form}) {
      const StartingPoint s = starting_point(f);
      for (const Ban& v : s.x) CHECK(v > Ban(0.0));
      for (const Ban& v : s.s) CHECK(v > Ban(0.0));
    }
  }
}

TEST_CASE("residuals and measures") {
  StandardForm p;
  p.a = BanMatrix{{1, 1}};
  p.b = BanVector{2};
  p.c = BanVector{1, 2};
  p.q = BanMatrix(2, 2);
  IterateState st;
  st.x = BanVector{1, 1};
  st.lambda = BanVector{1};
  st.s = BanVector{0, 1};
  compute_residuals(st, p);
  compute_measures(st, p);
  CHECK(st.r_b[0].is_zero());
  CHECK(st.r_c[0].is_zero());
  CHECK(st.r_c[1].is_zero());
  CHECK(st.rho1.is_zero());
  CHECK(st.mu == Ban(0.5));

  // infinitesimal data with a finite residual gives an infinite measure
  StandardForm tiny = p;
  tiny.b = BanVector{Ban::eta()};
  compute_residuals(st, tiny);
  compute_measures(st, tiny);
  CHECK(st.rho1.power() > 0);

  // embedded right-hand side with a residual of 1e-9 alpha
  StandardForm big;
  big.a = BanMatrix::identity(3);
  big.b = BanVector{2, 1, -Ban::alpha()};
  big.c = BanVector{1, 1, 1};
  big.q = BanMatrix(3, 3);
  IterateState e;
  e.x = big.b;
  e.x[2] += Ban::monomial(1e-9, 1);
  e.lambda = BanVector(3);
  e.s = BanVector{1, 1, 1};
  compute_residuals(e, big);
  compute_measures(e, big);
  CHECK(e.rho1.power() == 0);
  CHECK(e.rho1.lead() < 1e-8);
  CHECK(e.rho1.lead() > 1e-10);
}

TEST_CASE("newton directions") {
  // min x s.t. x = 1: predictor from x = 2 moves straight to 1
  StandardForm p;
  p.a = BanMatrix{{1}};
  p.b = BanVector{1};
  p.c = BanVector{1};
  p.q = BanMatrix(1, 1);
  IterateState st;
  st.x = BanVector{2};
  st.lambda = BanVector{0};
  st.s = BanVector{1};
  compute_residuals(st, p);
  const NewtonDirection d = newton_solve(p, st.x, st.s, -st.r_c, -st.r_b, -st.r_mu);
  CHECK(d.dx[0] == Ban(-1.0));
  CHECK(d.dlambda[0] == Ban(0.5));
  CHECK(d.ds[0] == Ban(-0.5));

  // at an exact KKT point the predictor is zero
  st.x = BanVector{1};
  st.lambda = BanVector{1};
  st.s = BanVector{0};
  compute_residuals(st, p);
  const NewtonDirection z = newton_solve(p, BanVector{1}, BanVector{1e-30}, -st.r_c, -st.r_b, -st.r_mu);
  CHECK(z.dx[0].is_zero());
  CHECK(z.dlambda[0].is_zero());
  CHECK(z.ds[0].is_zero());
}

TEST_CASE("nearly complementary pairs are re-centered one order below mu") {
  BanVector x{1e-9, 2};
  BanVector s{3, 1e-9};
  const Ban mu(1e-9);
  CHECK(update_zero_entries(x, s, mu, 1e-8) == 2);
  const Ban xi = Ban(2.0) * Ban::eta() / Ban(5.0);
  CHECK(close(x[0], xi, 1e-14));
  CHECK(close(s[1], xi, 1e-14));
  CHECK(x[1] == Ban(2.0));
  CHECK(s[0] == Ban(3.0));
  CHECK((x[0] * s[0]).power() == -1);
  CHECK((x[1] * s[1]).power() == -1);

  BanVector a{1, 2};
  BanVector b{3, 4};
  CHECK(update_zero_entries(a, b, Ban(1e-9), 1e-8) == 0);
  CHECK(a == BanVector{1, 2});
  CHECK(b == BanVector{3, 4});
}

TEST_CASE("one-slot solves agree with a float interior point method") {
  ScopedBanLength guard(1);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t m = 2 + static_cast<std::size_t>((trial / 3) % 3);
    const LexProblem lp = random_lp(rng, n, m);
    const Vec expected = float_reference(to_standard_form(lp));
    const SolveResult r = solve(lp, {}, EmbedMode::Off);
    CAPTURE(trial);
    REQUIRE(r.status == Status::Optimal);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(r.x_original[j].lead() - expected[j]) < 1e-6);
  }
}

TEST_CASE("two-objective plane problems agree with vertex enumeration") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Lp2 p = random_lex2(rng, trial);
    const Vec expected = vertex_oracle(p);
    const SolveResult r = solve(to_problem(p));
    CAPTURE(trial);
    REQUIRE(r.status == Status::Optimal);
    CHECK(std::abs(r.x_original[0].coeff_at_power(0) - expected[0]) < 1e-6);
    CHECK(std::abs(r.x_original[1].coeff_at_power(0) - expected[1]) < 1e-6);
  }
}

TEST_CASE("fixture runs keep iterates interior and mu magnitudes non-increasing") {
  for (const char* name : {"exp1.json", "exp2_unbounded.json", "exp2_infeasible.json", "exp3.json",
                           "exp4.json"}) {
    CAPTURE(name);
    int last_power = std::numeric_limits<int>::max();
    int interior_failures = 0;
    int increases = 0;
    int iterations = 0;
    solve(load_problem(kFixtures / name), {}, EmbedMode::Auto, [&](int iter, const IterateState& st) {
      if (iter == 0) last_power = std::numeric_limits<int>::max();
      for (const Ban& v : st.x) interior_failures += !(v > Ban(0.0));
      for (const Ban& v : st.s) interior_failures += !(v > Ban(0.0));
      if (st.mu.power() > last_power) ++increases;
      last_power = st.mu.power();
      ++iterations;
    });
    CHECK(iterations > 0);
    CHECK(interior_failures == 0);
    CHECK(increases == 0);
  }
}

TEST_CASE("configuration is validated") {
  SolverConfig cfg;
  cfg.eps = 0;
  CHECK_THROWS(cfg.validate());
  cfg.eps = 1e-8;
  cfg.max_it = 0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("an iteration cap reports the limit and keeps the trace") {
  SolverConfig cfg;
  cfg.max_it = 3;
  const SolveResult r = solve(load_problem(kFixtures / "exp1.json"), cfg, EmbedMode::Off);
  CHECK(r.status == Status::IterationLimit);
  CHECK(r.trace.size() == 4);
}
