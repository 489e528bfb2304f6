#include "naipm/model.hpp"

#include <algorithm>
#include <string>

namespace naipm {

namespace {

bool same_constraint(const Constraint& x, const Constraint& y) {
  if (x.rel != y.rel || !x.b.identical(y.b) || x.a.size() != y.a.size()) return false;
  for (std::size_t j = 0; j < x.a.size(); ++j) {
    if (!x.a[j].identical(y.a[j])) return false;
  }
  return true;
}

// Exponent of the smallest order over the nonzero entries; nullopt if all zero.
std::optional<int> smallest_power(const BanVector& v) {
  std::optional<int> best;
  for (const Ban& e : v) {
    if (e.is_zero()) continue;
    const int p = e.last_power();
    if (!best || p < *best) best = p;
  }
  return best;
}

std::optional<int> largest_power(const BanVector& v) {
  std::optional<int> best;
  for (const Ban& e : v) {
    if (e.is_zero()) continue;
    if (!best || e.power() > *best) best = e.power();
  }
  return best;
}

// The bounding row of the embedding: c - 1 + Q 1 in the source orientation.
BanVector bounding_row(const StandardForm& p) {
  const BanVector c = p.user_c();
  const BanMatrix q = p.user_q();
  BanVector row(p.cols());
  for (std::size_t j = 0; j < p.cols(); ++j) {
    Ban v = c[j] - Ban(1.0);
    for (std::size_t k = 0; k < p.cols(); ++k) v += q(j, k);
    row[j] = v;
  }
  return row;
}

}  // namespace

std::size_t LexProblem::num_vars() const {
  if (!bounds.empty()) return bounds.size();
  if (!objectives.empty()) return objectives.front().c.size();
  return constraints.empty() ? 0 : constraints.front().a.size();
}

void validate(const LexProblem& p) {
  const std::size_t n = p.num_vars();
  if (n == 0) throw ModelError("problem has no variables");
  if (p.objectives.empty()) throw ModelError("problem has no objectives");
  if (p.bounds.size() != n) {
    throw ModelError("expected " + std::to_string(n) + " variable bounds, got " +
                     std::to_string(p.bounds.size()));
  }
  for (std::size_t k = 0; k < p.objectives.size(); ++k) {
    const Objective& o = p.objectives[k];
    const std::string where = "objective " + std::to_string(k + 1);
    if (o.c.size() != n) throw ModelError(where + ": c has wrong length");
    if (o.q.empty()) continue;
    if (o.q.rows() != n || o.q.cols() != n) throw ModelError(where + ": Q has wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(o.q(i, j) == o.q(j, i))) throw ModelError(where + ": Q is not symmetric");
      }
    }
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (p.constraints[i].a.size() != n) {
      throw ModelError("constraint " + std::to_string(i + 1) + ": wrong number of coefficients");
    }
  }
}

ScalarObjective scalarize_lex(const LexProblem& p) {
  validate(p);
  const std::size_t n = p.num_vars();
  const std::size_t levels = p.objectives.size();
  if (levels > static_cast<std::size_t>(ban_length())) {
    throw ModelError(std::to_string(levels) + " objectives cannot be represented with ban length " +
                     std::to_string(ban_length()) + "; increase the length to at least " +
                     std::to_string(levels));
  }
  ScalarObjective out{BanMatrix(n, n), BanVector(n)};
  const double sign = p.sense == Sense::Maximize ? -1.0 : 1.0;
  for (std::size_t k = 0; k < levels; ++k) {
    const Ban weight = Ban::monomial(sign, -static_cast<int>(k));
    const Objective& o = p.objectives[k];
    for (std::size_t j = 0; j < n; ++j) out.c[j] += weight * o.c[j];
    if (o.q.empty()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.q(i, j) += weight * o.q(i, j);
    }
  }
  return out;
}

BanVector StandardForm::user_c() const { return maximize ? -c : c; }

BanMatrix StandardForm::user_q() const {
  return maximize ? BanMatrix(q.rows(), q.cols()) - q : q;
}

Ban StandardForm::objective(const BanVector& x) const {
  return Ban(0.5) * dot(x, mat_vec(q, x)) + dot(c, x);
}

BanVector StandardForm::to_original(const BanVector& x) const {
  BanVector out(original.size());
  for (std::size_t j = 0; j < original.size(); ++j) {
    out[j] = x[original[j].plus];
    if (original[j].minus) out[j] -= x[*original[j].minus];
  }
  return out;
}

StandardForm to_standard_form(const LexProblem& p) {
  const ScalarObjective obj = scalarize_lex(p);
  if (p.constraints.empty()) throw ModelError("problem has no constraints");

  std::vector<const Constraint*> rows;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Constraint& con = p.constraints[i];
    if (std::all_of(con.a.begin(), con.a.end(), [](const Ban& v) { return v.is_zero(); })) {
      throw ModelError("constraint " + std::to_string(i + 1) + " has only zero coefficients");
    }
    const bool duplicate = std::any_of(rows.begin(), rows.end(),
                                       [&](const Constraint* r) { return same_constraint(*r, con); });
    if (!duplicate) rows.push_back(&con);
  }

  const std::size_t n = p.num_vars();
  StandardForm sf;
  sf.maximize = p.sense == Sense::Maximize;
  sf.priority_levels = p.objectives.size();
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    VariableMap map{cols++, std::nullopt};
    if (p.bounds[j] == Bound::Free) map.minus = cols++;
    sf.original.push_back(map);
  }
  const std::size_t structural = cols;
  const std::size_t slacks = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const Constraint* r) { return r->rel != Relation::Equal; }));
  cols += slacks;

  const std::size_t m = rows.size();
  sf.a = BanMatrix(m, cols);
  sf.b = BanVector(m);
  sf.c = BanVector(cols);
  sf.q = BanMatrix(cols, cols);

  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& mj = sf.original[j];
    sf.c[mj.plus] = obj.c[j];
    if (mj.minus) sf.c[*mj.minus] = -obj.c[j];
    for (std::size_t k = 0; k < n; ++k) {
      const Ban& v = obj.q(j, k);
      if (v.is_zero()) continue;
      const VariableMap& mk = sf.original[k];
      sf.q(mj.plus, mk.plus) = v;
      if (mk.minus) sf.q(mj.plus, *mk.minus) = -v;
      if (mj.minus) sf.q(*mj.minus, mk.plus) = -v;
      if (mj.minus && mk.minus) sf.q(*mj.minus, *mk.minus) = v;
    }
  }

  std::size_t slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& con = *rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      const VariableMap& mj = sf.original[j];
      sf.a(i, mj.plus) = con.a[j];
      if (mj.minus) sf.a(i, *mj.minus) = -con.a[j];
    }
    if (con.rel == Relation::LessEqual) sf.a(i, slack++) = Ban(1.0);
    if (con.rel == Relation::GreaterEqual) sf.a(i, slack++) = Ban(-1.0);
    sf.b[i] = con.b;
  }
  return sf;
}

PenaltyWeights estimate_weights(const StandardForm& p) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  const BanVector artificial = p.b - mat_vec(p.a, BanVector(n, Ban(1.0)));

  std::optional<int> p2;
  for (std::size_t j = 0; j < m; ++j) {
    if (p.b[j].is_zero()) continue;
    BanVector row = p.a.row(j);
    row.push_back(artificial[j]);
    const auto low = smallest_power(row);
    if (!low) continue;
    const int candidate = p.b[j].power() - *low;
    if (!p2 || candidate < *p2) p2 = candidate;
  }
  const int p2_power = p2 ? *p2 + 1 : 1;

  const BanVector row = bounding_row(p);
  std::optional<int> p1;
  for (std::size_t i = 0; i < n; ++i) {
    const BanVector qi = p.q.row(i);
    const auto q_power = largest_power(qi);
    if (p.c[i].is_zero() && !q_power) continue;
    // O([c_i, Q_i O(p2 eta)])
    int top = p.c[i].is_zero() ? *q_power + p2_power - 1 : p.c[i].power();
    if (q_power) top = std::max(top, *q_power + p2_power - 1);
    BanVector column = p.a.col(i);
    column.push_back(row[i]);
    column.push_back(Ban(1.0));
    const int low = *smallest_power(column);
    const int candidate = top - low;
    if (!p1 || candidate < *p1) p1 = candidate;
  }
  const int p1_power = p1 ? *p1 + 1 : 1;

  return {Ban::monomial(1.0, p1_power), Ban::monomial(1.0, p2_power)};
}

EmbeddedProblem embed(const StandardForm& p, const PenaltyWeights& w) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  EmbeddedProblem e;
  e.weights = w;
  e.source_rows = m;
  e.source_cols = n;
  e.artificial = n;
  e.slack = n + 1;
  e.added_row = m;

  StandardForm& f = e.form;
  f.maximize = p.maximize;
  f.priority_levels = p.priority_levels;
  f.original = p.original;
  f.a = BanMatrix(m + 1, n + 2);
  f.b = BanVector(m + 1);
  f.c = BanVector(n + 2);
  f.q = BanMatrix(n + 2, n + 2);

  const BanVector artificial = p.b - mat_vec(p.a, BanVector(n, Ban(1.0)));
  const BanVector row = bounding_row(p);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) f.a(i, j) = p.a(i, j);
    f.a(i, e.artificial) = artificial[i];
    f.b[i] = p.b[i];
  }
  for (std::size_t j = 0; j < n; ++j) f.a(m, j) = row[j];
  f.a(m, e.slack) = Ban(-1.0);
  f.b[m] = -w.p1;

  for (std::size_t j = 0; j < n; ++j) {
    f.c[j] = p.c[j];
    for (std::size_t k = 0; k < n; ++k) f.q(j, k) = p.q(j, k);
  }
  f.c[e.artificial] = w.p2;
  return e;
}

StandardForm strip_embedding(const EmbeddedProblem& e) {
  const std::size_t m = e.source_rows;
  const std::size_t n = e.source_cols;
  StandardForm p;
  p.maximize = e.form.maximize;
  p.priority_levels = e.form.priority_levels;
  p.original = e.form.original;
  p.a = BanMatrix(m, n);
  p.b = BanVector(e.form.b.begin(), e.form.b.begin() + static_cast<std::ptrdiff_t>(m));
  p.c = BanVector(e.form.c.begin(), e.form.c.begin() + static_cast<std::ptrdiff_t>(n));
  p.q = BanMatrix(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.a(i, j) = e.form.a(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.q(i, j) = e.form.q(i, j);
  }
  return p;
}

}  // namespace naipm
