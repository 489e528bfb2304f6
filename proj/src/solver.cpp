#include "naipm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace naipm {

namespace {

// Largest leading power over the nonzero entries, the O(0) = 1 convention.
Ban order_or_one(const BanVector& v) {
  std::optional<int> top;
  for (const Ban& e : v) {
    if (!e.is_zero() && (!top || e.power() > *top)) top = e.power();
  }
  return Ban::monomial(1.0, top.value_or(0));
}

int top_power(const BanVector& v) { return order_or_one(v).power(); }

int level_span(const BanVector& v) {
  std::optional<int> top, bottom;
  for (const Ban& e : v) {
    if (e.is_zero()) continue;
    if (!top || e.power() > *top) top = e.power();
    if (!bottom || e.last_power() < *bottom) bottom = e.last_power();
  }
  if (!top) return 1;
  return std::min(*top - *bottom + 1, ban_length());
}

// Keeps the leading `terms` monosemia of every entry.
BanVector leading_terms(const BanVector& v, int terms) {
  BanVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(terms), v[i].coeffs().size());
    out[i] = Ban::from_coeffs(v[i].power(), v[i].coeffs().first(keep), v[i].length());
  }
  return out;
}

BanVector lead_mon(const BanVector& v) {
  BanVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = lead_mon(v[i]);
  return out;
}

// Keeps only the monosemia of power <= limit.
Ban drop_above(const Ban& v, int limit) {
  if (v.is_zero() || v.power() <= limit) return v;
  const int skip = v.power() - limit;
  if (skip >= v.length()) return Ban::monomial(0.0, 0, v.length());
  const auto coeffs = v.coeffs();
  return Ban::from_coeffs(limit, coeffs.subspan(static_cast<std::size_t>(skip)), v.length());
}

// Drops the monosemia below alpha^limit.
Ban keep_above(const Ban& v, int limit) {
  if (v.is_zero()) return v;
  if (v.power() < limit) return Ban::monomial(0.0, 0, v.length());
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(v.power() - limit + 1), v.coeffs().size());
  return Ban::from_coeffs(v.power(), v.coeffs().first(keep), v.length());
}

BanVector keep_above(const BanVector& v, int limit) {
  BanVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = keep_above(v[i], limit);
  return out;
}

BanVector drop_above(const BanVector& v, int limit) {
  BanVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = drop_above(v[i], limit);
  return out;
}

Ban min_entry(const BanVector& v) { return *std::min_element(v.begin(), v.end()); }

Ban partial_objective(const StandardForm& p, const BanVector& x, std::size_t cols) {
  Ban quad;
  Ban lin;
  for (std::size_t i = 0; i < cols; ++i) {
    if (x[i].is_zero()) continue;
    lin += p.c[i] * x[i];
    Ban row;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!p.q(i, j).is_zero()) row += p.q(i, j) * x[j];
    }
    quad += x[i] * row;
  }
  return Ban(0.5) * quad + lin;
}

std::vector<double> level_coefficients(const Ban& f, std::size_t levels) {
  std::vector<double> out(levels);
  for (std::size_t k = 0; k < levels; ++k) out[k] = f.coeff_at_power(-static_cast<int>(k));
  return out;
}

Ban worst_measure(const IterateState& st) { return max(max(st.rho1, st.rho2), st.rho3); }

}  // namespace

void SolverConfig::validate() const {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (max_it < 1) throw std::invalid_argument("max_it must be at least 1");
  if (!(step_damping > 0 && step_damping < 1)) {
    throw std::invalid_argument("step damping must lie in (0, 1)");
  }
  if (!(recenter_coefficient > 0)) throw std::invalid_argument("recenter coefficient must be positive");
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::OriginalInfeasible: return "infeasible";
    case Status::OriginalUnbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

StartingPoint starting_point(const StandardForm& p) {
  const BanMatrix at = transpose(p.a);
  const BanMatrix aat = mat_mul(p.a, at);
  BanVector x, lambda;
  try {
    x = mat_vec(at, lu_solve(aat, p.b));
    const BanVector cq = p.c + mat_vec(p.q, x);
    lambda = lu_solve(aat, mat_vec(p.a, cq));
  } catch (const SingularMatrixError& e) {
    throw SolverError("constraint matrix is rank deficient (no pivot at elimination step " +
                      std::to_string(e.step()) + ")");
  }
  BanVector s = p.c + mat_vec(p.q, x) - mat_vec(at, lambda);

  const std::size_t n = x.size();
  const BanVector ones(n, Ban(1.0));
  const Ban shift_x = max(Ban(-1.5) * min_entry(x), Ban());
  const Ban shift_s = max(Ban(-1.5) * min_entry(s), Ban());
  x = x + shift_x * ones;
  s = s + shift_s * ones;

  const Ban xs = dot(x, s);
  const Ban sum_s = sum(s);
  const Ban sum_x = sum(x);
  // With x's = 0 the usual shifts vanish; only a side touching zero moves.
  const auto fallback = [](const BanVector& v) { return min_entry(v) > Ban() ? Ban() : Ban(1.0); };
  const Ban dx = (xs.is_zero() || sum_s.is_zero()) ? fallback(x) : Ban(0.5) * xs / sum_s;
  const Ban ds = (xs.is_zero() || sum_x.is_zero()) ? fallback(s) : Ban(0.5) * xs / sum_x;
  x = x + dx * ones;
  s = s + ds * ones;
  return {lead_mon(x), lead_mon(lambda), lead_mon(s)};
}

void compute_residuals(IterateState& st, const StandardForm& p) {
  st.r_b = mat_vec(p.a, st.x) - p.b;
  st.r_c = mat_vec(transpose(p.a), st.lambda) + st.s - mat_vec(p.q, st.x) - p.c;
  st.r_mu = hadamard(st.x, st.s);
  st.mu = sum(st.r_mu) / Ban(static_cast<double>(st.x.size()));
}

void compute_measures(IterateState& st, const StandardForm& p) {
  // Numerators are taken level by level and denominators act as scales only,
  // so an eps-small leading level does not spill into the levels below it.
  st.rho1 = level_norm(st.r_b) / lead_mon(order_or_one(p.b) + euclidean_norm(p.b));
  st.rho2 = level_norm(st.r_c) / lead_mon(order_or_one(p.c) + euclidean_norm(p.c));
  const Ban f = p.objective(st.x);
  st.rho3 = st.mu / lead_mon(order_or_one({f}) + abs(f));
}

ConvergenceLevels convergence_levels(const StandardForm& p) {
  BanVector costs = p.c;
  for (std::size_t i = 0; i < p.q.rows(); ++i) {
    for (std::size_t j = 0; j < p.q.cols(); ++j) costs.push_back(p.q(i, j));
  }
  return {level_span(p.b), level_span(costs),
          std::min(static_cast<int>(p.priority_levels), ban_length())};
}

bool check_convergence(const Ban& rho, int levels, double eps) {
  if (rho.is_zero()) return true;
  if (rho.power() > 0) return false;
  for (int i = 0; i < levels; ++i) {
    if (std::abs(rho.coeff_at_power(-i)) > eps) return false;
  }
  return true;
}

NewtonDirection newton_solve(const StandardForm& p, const BanVector& x, const BanVector& s,
                             const BanVector& d_c, const BanVector& d_b, const BanVector& d_mu) {
  const std::size_t n = p.cols();
  const std::size_t m = p.rows();
  const std::size_t size = 2 * n + m;
  BanMatrix k(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.q(i, j).is_zero()) k(i, j) = -p.q(i, j);
    }
    for (std::size_t j = 0; j < m; ++j) k(i, n + j) = p.a(j, i);
    k(i, n + m + i) = Ban(1.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) k(n + i, j) = p.a(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    k(n + m + i, i) = s[i];
    k(n + m + i, n + m + i) = x[i];
  }

  BanVector rhs;
  rhs.reserve(size);
  rhs.insert(rhs.end(), d_c.begin(), d_c.end());
  rhs.insert(rhs.end(), d_b.begin(), d_b.end());
  rhs.insert(rhs.end(), d_mu.begin(), d_mu.end());
  const BanVector sol = lu_solve(k, rhs);

  NewtonDirection d;
  d.dx.assign(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
  d.dlambda.assign(sol.begin() + static_cast<std::ptrdiff_t>(n),
                   sol.begin() + static_cast<std::ptrdiff_t>(n + m));
  d.ds.assign(sol.begin() + static_cast<std::ptrdiff_t>(n + m), sol.end());
  return d;
}

Ban step_length(const BanVector& v, const BanVector& dv, double damping) {
  std::optional<Ban> best;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (dv[i].sign() >= 0) continue;
    Ban ratio = -v[i] / dv[i];
    if (!best || ratio < *best) best = std::move(ratio);
  }
  const Ban cap(1.0);
  if (!best) return Ban(damping);
  return Ban(damping) * min(lead_mon(*best), cap);
}

Ban mehrotra_sigma(const Ban& mu, const Ban& mu_new, double floor) {
  const Ban ratio = mu_new / mu;
  return max(lead_mon(ratio * ratio * ratio), Ban(floor));
}

std::size_t update_zero_entries(BanVector& x, BanVector& s, const Ban& mu, double eps,
                                double recenter_scale) {
  if (mu.is_zero()) return 0;
  const std::size_t n = x.size();
  const double threshold = std::sqrt(static_cast<double>(n) * eps);
  // Each side is read relative to its own scale, alpha^px for x and alpha^ps
  // for s; with finite iterates both scales are 1.
  const int px = top_power(x);
  const int ps = top_power(s);
  const Ban unit_x = Ban::monomial(1.0, px);
  const Ban unit_s = Ban::monomial(1.0, ps);
  std::vector<std::size_t> flagged;
  std::vector<bool> on_x;
  Ban total;
  for (std::size_t i = 0; i < n; ++i) {
    if ((x[i] * s[i]).power() > mu.power()) continue;
    const Ban xr = x[i] / unit_x;
    const Ban sr = s[i] / unit_s;
    const bool x_side = xr < sr;
    if (std::abs((x_side ? xr : sr).coeff_at_power(0)) >= threshold) continue;
    flagged.push_back(i);
    on_x.push_back(x_side);
    total += x_side ? sr : xr;
  }
  if (flagged.empty()) return 0;
  const Ban target = Ban(recenter_scale) * magnitude(mu) * Ban::eta() / (unit_x * unit_s);
  const Ban xi = lead_mon(Ban(static_cast<double>(flagged.size())) * target / total);
  for (std::size_t k = 0; k < flagged.size(); ++k) {
    const std::size_t i = flagged[k];
    if (on_x[k]) {
      x[i] = xi * unit_x;
    } else {
      s[i] = xi * unit_s;
    }
  }
  return flagged.size();
}

namespace {

SolveResult run(const StandardForm& p, const SolverConfig& cfg, const IterationObserver& observer,
                std::size_t objective_cols) {
  cfg.validate();
  const ConvergenceLevels levels = convergence_levels(p);
  const int b_top = top_power(p.b);
  const int c_top = top_power(p.c);
  const std::size_t n = p.cols();

  const StartingPoint start = starting_point(p);
  IterateState st;
  st.x = start.x;
  st.lambda = start.lambda;
  st.s = start.s;

  SolveResult result;
  std::optional<IterateState> best;
  int resolved_levels = 0;

  auto record = [&](int iter) {
    IterationRecord rec;
    rec.iter = iter;
    rec.mu = st.mu;
    rec.x = p.to_original(st.x);
    rec.objective = partial_objective(p, st.x, objective_cols);
    result.trace.push_back(std::move(rec));
  };

  for (int iter = 0;; ++iter) {
    compute_residuals(st, p);
    compute_measures(st, p);
    record(iter);
    if (observer) observer(iter, st);

    if (check_convergence(st.rho1, levels.primal, cfg.eps) &&
        check_convergence(st.rho2, levels.dual, cfg.eps) &&
        check_convergence(st.rho3, levels.centrality, cfg.eps)) {
      result.status = Status::Optimal;
      result.iterations = iter;
      best = st;
      break;
    }
    if (!best || worst_measure(st) < worst_measure(*best)) best = st;
    if (iter == cfg.max_it) {
      result.status = Status::IterationLimit;
      result.iterations = iter;
      break;
    }

    // Once the current level is eps-satisfied on all three measures, the
    // vanishing entries are pushed one order below and the next level
    // becomes the target. The transition waits while the recentering itself
    // would break the satisfied level.
    const int next = resolved_levels + 1;
    if (next < ban_length() && check_convergence(st.rho1, next, cfg.eps) &&
        check_convergence(st.rho2, next, cfg.eps) && check_convergence(st.rho3, next, cfg.eps)) {
      // The new level restarts from the centrality the first level started from.
      const double scale = cfg.recenter_coefficient * std::abs(result.trace.front().mu.lead());
      IterateState moved = st;
      if (update_zero_entries(moved.x, moved.s, moved.mu, cfg.eps, scale) > 0) {
        compute_residuals(moved, p);
        compute_measures(moved, p);
      }
      if (check_convergence(moved.rho1, next, cfg.eps) &&
          check_convergence(moved.rho2, next, cfg.eps)) {
        st = std::move(moved);
        ++resolved_levels;
      }
    }

    // Resolved levels are treated as satisfied.
    const BanVector r_b = drop_above(st.r_b, b_top - resolved_levels);
    const BanVector r_c = keep_above(drop_above(st.r_c, c_top - resolved_levels), c_top - resolved_levels);

    const int depth = resolved_levels + 1;
    NewtonDirection pred;
    NewtonDirection corr;
    try {
      pred = newton_solve(p, st.x, st.s, -r_c, -r_b, -st.r_mu);
      pred = {leading_terms(pred.dx, depth), leading_terms(pred.dlambda, depth), leading_terms(pred.ds, depth)};

      const Ban nu_p = min(step_length(st.x, pred.dx, cfg.step_damping),
                           step_length(st.s, pred.ds, cfg.step_damping));
      const BanVector x_trial = st.x + nu_p * pred.dx;
      const BanVector s_trial = st.s + nu_p * pred.ds;
      const Ban mu_new = dot(x_trial, s_trial) / Ban(static_cast<double>(n));
      const Ban sigma = mehrotra_sigma(st.mu, mu_new, cfg.sigma_floor);

      const BanVector zeros_n(n);
      const BanVector zeros_m(p.rows());
      BanVector d_mu = hadamard(pred.dx, pred.ds);
      for (Ban& v : d_mu) v = sigma * st.mu - v;
      corr = newton_solve(p, st.x, st.s, zeros_n, zeros_m, d_mu);
    } catch (const SingularMatrixError& e) {
      throw SolverError("Newton system is singular at iteration " + std::to_string(iter + 1) +
                        " (elimination step " + std::to_string(e.step()) + ")");
    }

    const BanVector dx = leading_terms(pred.dx + corr.dx, depth);
    const BanVector dl = leading_terms(pred.dlambda + corr.dlambda, depth);
    const BanVector ds = leading_terms(pred.ds + corr.ds, depth);
    const Ban nu = min(step_length(st.x, dx, cfg.step_damping),
                       step_length(st.s, ds, cfg.step_damping));
    st.x = st.x + nu * dx;
    st.lambda = st.lambda + nu * dl;
    st.s = st.s + nu * ds;
  }

  if (result.status == Status::IterationLimit && best) st = *best;
  result.x = st.x;
  result.lambda = st.lambda;
  result.s = st.s;
  result.x_original = p.to_original(st.x);
  result.objective = partial_objective(p, st.x, objective_cols);
  result.objective_levels = level_coefficients(result.objective, p.priority_levels);
  return result;
}

bool negligible(const Ban& v, int scale_power, double threshold) {
  if (v.is_zero() || v.power() < scale_power) return true;
  return v.power() == scale_power && std::abs(v.lead()) <= threshold;
}

}  // namespace

SolveResult solve(const StandardForm& p, const SolverConfig& cfg, const IterationObserver& observer) {
  return run(p, cfg, observer, p.cols());
}

SolveResult solve(const EmbeddedProblem& e, const SolverConfig& cfg, const IterationObserver& observer) {
  SolveResult r = run(e.form, cfg, observer, e.source_cols);
  r.artificial = r.x[e.artificial];
  r.bound_dual = r.lambda[e.added_row];
  if (r.status != Status::IterationLimit) r.status = classify_result(r, e, cfg.eps);
  return r;
}

SolveResult solve(const LexProblem& problem, const SolverConfig& cfg, EmbedMode mode,
                  const IterationObserver& observer) {
  const StandardForm form = to_standard_form(problem);
  if (mode != EmbedMode::On) {
    try {
      SolveResult direct = solve(form, cfg, observer);
      if (direct.status == Status::Optimal || mode == EmbedMode::Off) return direct;
    } catch (const SolverError&) {
      if (mode == EmbedMode::Off) throw;
    }
  }
  SolveResult r = solve(embed(form, estimate_weights(form)), cfg, observer);
  r.embedded = true;
  return r;
}

Status classify_result(const SolveResult& result, const EmbeddedProblem& e, double eps) {
  const double threshold = std::sqrt(eps);
  const BanVector source_x(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(e.source_cols));
  const int x_scale = top_power(source_x);
  if (!negligible(result.x[e.artificial], x_scale, threshold)) return Status::OriginalInfeasible;

  const BanVector source_c(e.form.c.begin(), e.form.c.begin() + static_cast<std::ptrdiff_t>(e.source_cols));
  const int c_scale = top_power(source_c);
  if (!negligible(result.lambda[e.added_row], c_scale, threshold)) return Status::OriginalUnbounded;

  bool finite_data = true;
  for (const Ban& v : e.form.b) {
    if (&v != &e.form.b[e.added_row] && !v.is_zero() && v.power() > 0) finite_data = false;
  }
  for (std::size_t i = 0; i < e.source_rows && finite_data; ++i) {
    for (std::size_t j = 0; j < e.source_cols; ++j) {
      if (!e.form.a(i, j).is_zero() && e.form.a(i, j).power() > 0) finite_data = false;
    }
  }
  if (finite_data) {
    for (const Ban& v : result.x_original) {
      if (!v.is_zero() && v.power() > 0) return Status::OriginalUnbounded;
    }
  }
  return Status::Optimal;
}

}  // namespace naipm
