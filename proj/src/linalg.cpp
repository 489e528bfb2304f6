#include "naipm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace naipm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

BanMatrix::BanMatrix(std::initializer_list<std::initializer_list<Ban>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

BanMatrix BanMatrix::identity(std::size_t n) {
  BanMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Ban(1.0);
  return m;
}

BanVector BanMatrix::row(std::size_t i) const {
  return BanVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

BanVector BanMatrix::col(std::size_t j) const {
  BanVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

SingularMatrixError::SingularMatrixError(std::size_t step)
    : std::runtime_error("singular matrix: no nonzero pivot at elimination step " +
                         std::to_string(step)),
      step_(step) {}

BanMatrix mat_mul(const BanMatrix& a, const BanMatrix& b) {
  require(a.cols() == b.rows(), "mat_mul: dimension mismatch");
  BanMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Ban& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

BanVector mat_vec(const BanMatrix& a, const BanVector& x) {
  require(a.cols() == x.size(), "mat_vec: dimension mismatch");
  BanVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
    }
  }
  return y;
}

BanMatrix transpose(const BanMatrix& a) {
  BanMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

BanMatrix diag(const BanVector& v) {
  BanMatrix d(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d(i, i) = v[i];
  return d;
}

BanVector hadamard(const BanVector& x, const BanVector& y) {
  require(x.size() == y.size(), "hadamard: dimension mismatch");
  BanVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
  return z;
}

Ban dot(const BanVector& x, const BanVector& y) {
  require(x.size() == y.size(), "dot: dimension mismatch");
  Ban s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Ban sum(const BanVector& x) {
  Ban s;
  for (const Ban& v : x) s += v;
  return s;
}

BanVector operator+(const BanVector& x, const BanVector& y) {
  require(x.size() == y.size(), "vector add: dimension mismatch");
  BanVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

BanVector operator-(const BanVector& x, const BanVector& y) {
  require(x.size() == y.size(), "vector subtract: dimension mismatch");
  BanVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

BanVector operator-(const BanVector& x) {
  BanVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
  return z;
}

BanVector operator*(const Ban& s, const BanVector& x) {
  BanVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = s * x[i];
  return z;
}

BanMatrix operator+(const BanMatrix& a, const BanMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix add: dimension mismatch");
  BanMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  }
  return c;
}

BanMatrix operator-(const BanMatrix& a, const BanMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix subtract: dimension mismatch");
  BanMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  }
  return c;
}

BanMatrix lu_solve(const BanMatrix& a, const BanMatrix& b) {
  require(a.rows() == a.cols(), "lu_solve: matrix is not square");
  require(a.rows() == b.rows(), "lu_solve: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  BanMatrix lu = a;
  BanMatrix x = b;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    Ban best = abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      Ban candidate = abs(lu(i, k));
      if (candidate > best) {
        best = std::move(candidate);
        pivot = i;
      }
    }
    if (best.is_zero()) throw SingularMatrixError(k);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(pivot, j));
    }
    const Ban inv_pivot = reciprocal(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (lu(i, k).is_zero()) continue;
      const Ban factor = lu(i, k) * inv_pivot;
      lu(i, k) = Ban();
      for (std::size_t j = k + 1; j < n; ++j) {
        if (!lu(k, j).is_zero()) lu(i, j) -= factor * lu(k, j);
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (!x(k, j).is_zero()) x(i, j) -= factor * x(k, j);
      }
    }
  }

  for (std::size_t kk = n; kk-- > 0;) {
    const Ban inv_pivot = reciprocal(lu(kk, kk));
    for (std::size_t j = 0; j < m; ++j) {
      Ban acc = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) {
        if (!lu(kk, c).is_zero() && !x(c, j).is_zero()) acc -= lu(kk, c) * x(c, j);
      }
      x(kk, j) = acc * inv_pivot;
    }
  }
  return x;
}

BanVector lu_solve(const BanMatrix& a, const BanVector& b) {
  BanMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  return lu_solve(a, rhs).col(0);
}

BanMatrix inverse(const BanMatrix& a) {
  return lu_solve(a, BanMatrix::identity(a.rows()));
}

Ban euclidean_norm(const BanVector& x) {
  Ban s;
  for (const Ban& v : x) s += v * v;
  return s.is_zero() ? s : sqrt_even(s);
}

Ban level_norm(const BanVector& x) {
  std::optional<int> top;
  for (const Ban& v : x) {
    if (!v.is_zero()) top = top ? std::max(*top, v.power()) : v.power();
  }
  if (!top) return Ban();
  const int length = ban_length();
  std::vector<double> coeffs(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    double acc = 0.0;
    for (const Ban& v : x) acc = std::hypot(acc, v.coeff_at_power(*top - k));
    coeffs[static_cast<std::size_t>(k)] = acc;
  }
  return Ban::from_coeffs(*top, coeffs, length);
}

}  // namespace naipm
