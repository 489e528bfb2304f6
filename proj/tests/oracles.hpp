#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "naipm/model.hpp"

// Independent double-precision references for the solver tests.
namespace naipm::testing {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Vec dense_solve(Mat a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double norm(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Textbook Mehrotra predictor-corrector for min c'x, Ax = b, x >= 0, in
// doubles through the normal equations.
inline Vec float_ipm(const Mat& a, const Vec& b, const Vec& c) {
  const std::size_t m = b.size();
  const std::size_t n = c.size();
  Vec x(n, 1.0), s(n, 1.0), lam(m, 0.0);

  const auto directions = [&](const Vec& rb, const Vec& rc, const Vec& rmu, Vec& dx, Vec& dl, Vec& ds) {
    Mat mm(m, Vec(m, 0.0));
    Vec rhs(m);
    Vec t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = (rmu[j] + x[j] * rc[j]) / s[j];
    for (std::size_t i = 0; i < m; ++i) {
      rhs[i] = -rb[i];
      for (std::size_t j = 0; j < n; ++j) rhs[i] -= a[i][j] * t[j];
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < n; ++j) mm[i][k] += a[i][j] * x[j] / s[j] * a[k][j];
      }
    }
    dl = dense_solve(mm, rhs);
    dx.assign(n, 0.0);
    ds.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double at = 0;
      for (std::size_t i = 0; i < m; ++i) at += a[i][j] * dl[i];
      ds[j] = -rc[j] - at;
      dx[j] = t[j] + x[j] * at / s[j];
    }
  };
  const auto max_step = [](const Vec& v, const Vec& dv) {
    double step = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (dv[i] < 0) step = std::min(step, -v[i] / dv[i]);
    }
    return step;
  };

  for (int it = 0; it < 200; ++it) {
    Vec rb(m), rc(n);
    for (std::size_t i = 0; i < m; ++i) {
      rb[i] = -b[i];
      for (std::size_t j = 0; j < n; ++j) rb[i] += a[i][j] * x[j];
    }
    double mu = 0;
    for (std::size_t j = 0; j < n; ++j) {
      rc[j] = s[j] - c[j];
      for (std::size_t i = 0; i < m; ++i) rc[j] += a[i][j] * lam[i];
      mu += x[j] * s[j] / static_cast<double>(n);
    }
    if (norm(rb) < 1e-12 * (1 + norm(b)) && norm(rc) < 1e-12 * (1 + norm(c)) && mu < 1e-13) break;

    Vec rmu(n), dx, dl, ds;
    for (std::size_t j = 0; j < n; ++j) rmu[j] = -x[j] * s[j];
    directions(rb, rc, rmu, dx, dl, ds);
    const double ap = max_step(x, dx);
    const double ad = max_step(s, ds);
    double mu_aff = 0;
    for (std::size_t j = 0; j < n; ++j) mu_aff += (x[j] + ap * dx[j]) * (s[j] + ad * ds[j]) / static_cast<double>(n);
    const double sigma = std::pow(mu_aff / mu, 3);
    for (std::size_t j = 0; j < n; ++j) rmu[j] = -x[j] * s[j] - dx[j] * ds[j] + sigma * mu;
    directions(rb, rc, rmu, dx, dl, ds);
    const double sp = std::min(1.0, 0.99 * max_step(x, dx));
    const double sd = std::min(1.0, 0.99 * max_step(s, ds));
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += sp * dx[j];
      s[j] += sd * ds[j];
    }
    for (std::size_t i = 0; i < m; ++i) lam[i] += sd * dl[i];
  }
  return x;
}

struct Lp2 {
  Mat a;  // rows of a'x <= b
  Vec b;
  Vec c1, c2;
};

// Lexicographic minimum over the vertices of {a'x <= b, x >= 0} in the plane.
inline Vec vertex_oracle(const Lp2& p) {
  Mat lines = p.a;
  Vec rhs = p.b;
  lines.push_back({-1, 0});
  rhs.push_back(0);
  lines.push_back({0, -1});
  rhs.push_back(0);
  Vec best;
  double best1 = std::numeric_limits<double>::infinity();
  double best2 = best1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      const double det = lines[i][0] * lines[k][1] - lines[i][1] * lines[k][0];
      if (std::abs(det) < 1e-12) continue;
      const Vec v{(rhs[i] * lines[k][1] - lines[i][1] * rhs[k]) / det,
                  (lines[i][0] * rhs[k] - rhs[i] * lines[k][0]) / det};
      bool feasible = true;
      for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r][0] * v[0] + lines[r][1] * v[1] > rhs[r] + 1e-9) feasible = false;
      }
      if (!feasible) continue;
      const double f1 = p.c1[0] * v[0] + p.c1[1] * v[1];
      const double f2 = p.c2[0] * v[0] + p.c2[1] * v[1];
      if (f1 < best1 - 1e-9 || (std::abs(f1 - best1) <= 1e-9 && f2 < best2)) {
        best = v;
        best1 = f1;
        best2 = f2;
      }
    }
  }
  return best;
}

inline LexProblem to_problem(const Lp2& p) {
  LexProblem out;
  out.objectives.push_back({BanMatrix(), BanVector{p.c1[0], p.c1[1]}});
  out.objectives.push_back({BanMatrix(), BanVector{p.c2[0], p.c2[1]}});
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    out.constraints.push_back({BanVector{p.a[i][0], p.a[i][1]}, Relation::LessEqual, Ban(p.b[i])});
  }
  out.bounds = {Bound::NonNegative, Bound::NonNegative};
  return out;
}


// Random bounded LP: min c'x, Ax <= b, x >= 0 with positive A and b and
// negative c, so the optimum is a nontrivial vertex.
inline LexProblem random_lp(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> ua(0.2, 2.0);
  std::uniform_real_distribution<double> ub(1.0, 5.0);
  std::uniform_real_distribution<double> uc(-3.0, -0.1);
  LexProblem lp;
  BanVector c(n);
  for (auto& v : c) v = uc(rng);
  lp.objectives.push_back({BanMatrix(), c});
  for (std::size_t i = 0; i < m; ++i) {
    BanVector a(n);
    for (auto& v : a) v = ua(rng);
    lp.constraints.push_back({a, Relation::LessEqual, Ban(ub(rng))});
  }
  lp.bounds.assign(n, Bound::NonNegative);
  return lp;
}

// Float IPM solution of the standard form of a real-valued problem, mapped
// back to the original variables.
inline Vec float_reference(const StandardForm& sf) {
  Mat a(sf.rows(), Vec(sf.cols()));
  Vec b(sf.rows()), c(sf.cols());
  for (std::size_t i = 0; i < sf.rows(); ++i) {
    b[i] = sf.b[i].lead();
    for (std::size_t j = 0; j < sf.cols(); ++j) a[i][j] = sf.a(i, j).lead();
  }
  for (std::size_t j = 0; j < sf.cols(); ++j) c[j] = sf.c[j].lead();
  const Vec x = float_ipm(a, b, c);
  Vec out;
  for (const VariableMap& v : sf.original) out.push_back(x[v.plus] - (v.minus ? x[*v.minus] : 0.0));
  return out;
}

// Every other instance has a first objective flat along a constraint, so
// the second one decides.
inline Lp2 random_lex2(std::mt19937_64& rng, int trial) {
  std::uniform_real_distribution<double> ua(0.2, 2.0);
  std::uniform_real_distribution<double> ub(1.0, 5.0);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  std::uniform_int_distribution<int> rows(2, 4);
  Lp2 p;
  const int m = rows(rng);
  for (int i = 0; i < m; ++i) {
    p.a.push_back({ua(rng), ua(rng)});
    p.b.push_back(ub(rng));
  }
  if (trial % 2 == 0) {
    const auto& row = p.a[static_cast<std::size_t>(trial / 2) % p.a.size()];
    p.c1 = {-row[0], -row[1]};
  } else {
    p.c1 = {-ua(rng), -ua(rng)};
  }
  p.c2 = {uc(rng), uc(rng)};
  return p;
}

}  // namespace naipm::testing
