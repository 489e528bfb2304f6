#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "naipm/linalg.hpp"

namespace naipm {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Bound { NonNegative, Free };

struct Objective {
  BanMatrix q;  // empty when the objective is linear
  BanVector c;
};

struct Constraint {
  BanVector a;
  Relation rel = Relation::LessEqual;
  Ban b;
};

/// Prioritized objectives over linear constraints; objectives[0] has the
/// highest priority. Quadratic terms are taken as 1/2 x'Qx.
struct LexProblem {
  Sense sense = Sense::Minimize;
  std::vector<Objective> objectives;
  std::vector<Constraint> constraints;
  std::vector<Bound> bounds;

  std::size_t num_vars() const;
};

/// Invalid problem data (dimensions, asymmetric Q, too many objectives, ...).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks dimensions and exact symmetry of every Q. PSD is not verified.
void validate(const LexProblem& p);

struct ScalarObjective {
  BanMatrix q;  // n x n, zero when all objectives are linear
  BanVector c;
};

/// Collapses the objective list with weights alpha^(1-k) into one
/// minimization objective (maximization is negated).
ScalarObjective scalarize_lex(const LexProblem& p);

/// Where an original variable lives in the standard form: x = x[plus] - x[minus].
struct VariableMap {
  std::size_t plus = 0;
  std::optional<std::size_t> minus;
};

/// min 1/2 x'Qx + c'x  s.t. Ax = b, x >= 0.
struct StandardForm {
  BanMatrix a;
  BanVector b;
  BanVector c;
  BanMatrix q;
  bool maximize = false;           // sense of the source problem
  std::size_t priority_levels = 1;
  std::vector<VariableMap> original;  // one entry per original variable

  std::size_t rows() const { return a.rows(); }
  std::size_t cols() const { return a.cols(); }

  /// Objective in the orientation of the source problem.
  BanVector user_c() const;
  BanMatrix user_q() const;

  /// 1/2 x'Qx + c'x for the (minimization) objective.
  Ban objective(const BanVector& x) const;

  /// Original variables from a standard-form point.
  BanVector to_original(const BanVector& x) const;
};

/// Adds slack/surplus columns, splits free variables and drops exact
/// duplicate constraints.
StandardForm to_standard_form(const LexProblem& p);

struct PenaltyWeights {
  Ban p1;  // bound on the added row, b~ = [b; -p1]
  Ban p2;  // cost of the artificial column
};

PenaltyWeights estimate_weights(const StandardForm& p);

/// Standard form enlarged with an artificial column (cost p2) and a
/// bounding row with its own slack (right-hand side -p1), so that the
/// enlarged problem is strictly feasible and bounded.
struct EmbeddedProblem {
  StandardForm form;
  PenaltyWeights weights;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
  std::size_t artificial = 0;  // column index
  std::size_t slack = 0;       // column index
  std::size_t added_row = 0;
};

EmbeddedProblem embed(const StandardForm& p, const PenaltyWeights& w);

/// Drops the added row and columns again.
StandardForm strip_embedding(const EmbeddedProblem& e);

}  // namespace naipm
