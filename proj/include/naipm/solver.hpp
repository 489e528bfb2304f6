#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "naipm/model.hpp"

namespace naipm {

struct SolverConfig {
  double eps = 1e-8;
  int max_it = 50;
  double step_damping = 0.99;
  /// When a priority level is satisfied, the next one restarts from
  /// recenter_coefficient times the leading coefficient of the starting mu,
  /// one order of magnitude below the current mu.
  double recenter_coefficient = 1.0;
  /// Lower bound on the Mehrotra centering parameter.
  double sigma_floor = 1e-8;

  void validate() const;
};

enum class Status { Optimal, OriginalInfeasible, OriginalUnbounded, IterationLimit };

const char* to_string(Status s);

/// Numerical failure inside the interior point loop.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IterateState {
  BanVector x, lambda, s;
  BanVector r_b, r_c, r_mu;
  Ban mu;
  Ban rho1, rho2, rho3;
};

/// Number of leading monosemia checked for each convergence measure.
struct ConvergenceLevels {
  int primal = 1;
  int dual = 1;
  int centrality = 1;
};

struct IterationRecord {
  int iter = 0;
  Ban mu;
  BanVector x;     // original variables
  Ban objective;   // minimized orientation, original columns only
};

struct SolveResult {
  Status status = Status::IterationLimit;
  int iterations = 0;
  BanVector x, lambda, s;  // solver coordinates
  BanVector x_original;
  Ban objective;
  std::vector<double> objective_levels;  // coefficients of eta^0, eta^1, ...
  std::vector<IterationRecord> trace;
  /// Set when the problem was embedded before solving.
  bool embedded = false;
  Ban artificial;
  Ban bound_dual;
};

struct StartingPoint {
  BanVector x, lambda, s;
};

struct NewtonDirection {
  BanVector dx, dlambda, ds;
};

StartingPoint starting_point(const StandardForm& p);

/// Fills r_b, r_c, r_mu and mu of the state from its x, lambda, s.
void compute_residuals(IterateState& st, const StandardForm& p);

/// Fills rho1, rho2, rho3 from the residuals already in the state.
void compute_measures(IterateState& st, const StandardForm& p);

ConvergenceLevels convergence_levels(const StandardForm& p);

/// True when rho is at most finite and its coefficients of alpha^0 ...
/// alpha^(1-levels) are all within eps.
bool check_convergence(const Ban& rho, int levels, double eps);

NewtonDirection newton_solve(const StandardForm& p, const BanVector& x, const BanVector& s,
                             const BanVector& d_c, const BanVector& d_b, const BanVector& d_mu);

/// Damped ratio test on the leading monosemium of the largest feasible step.
Ban step_length(const BanVector& v, const BanVector& dv, double damping);

Ban mehrotra_sigma(const Ban& mu, const Ban& mu_new, double floor = 1e-8);

/// Moves the vanishing side of every nearly complementary pair one order of
/// magnitude below mu, so that the new centrality is
/// recenter_scale * magnitude(mu) * eta. Returns the number of re-centered pairs.
std::size_t update_zero_entries(BanVector& x, BanVector& s, const Ban& mu, double eps,
                                double recenter_scale = 1.0);

using IterationObserver = std::function<void(int iter, const IterateState&)>;

/// Runs the interior point loop on a problem in standard form. The status is
/// Optimal on convergence and IterationLimit otherwise.
SolveResult solve(const StandardForm& p, const SolverConfig& cfg = {},
                  const IterationObserver& observer = {});

/// Solves the embedded problem and classifies the outcome with respect to
/// the source problem.
SolveResult solve(const EmbeddedProblem& e, const SolverConfig& cfg = {},
                  const IterationObserver& observer = {});

/// Off solves the standard form only; On always embeds. Auto solves the
/// standard form first and falls back to the embedding when that does not
/// reach an optimum, which is how infeasibility and unboundedness are told
/// apart.
enum class EmbedMode { Auto, On, Off };

SolveResult solve(const LexProblem& problem, const SolverConfig& cfg = {},
                  EmbedMode mode = EmbedMode::Auto, const IterationObserver& observer = {});

Status classify_result(const SolveResult& result, const EmbeddedProblem& e, double eps);

}  // namespace naipm
