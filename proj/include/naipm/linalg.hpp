#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "naipm/ban.hpp"

namespace naipm {

using BanVector = std::vector<Ban>;

/// Dense row-major matrix of Ban entries.
class BanMatrix {
 public:
  BanMatrix() = default;
  BanMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  BanMatrix(std::initializer_list<std::initializer_list<Ban>> rows);

  static BanMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Ban& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Ban& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  BanVector row(std::size_t i) const;
  BanVector col(std::size_t j) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Ban> data_;
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(std::size_t step);
  /// Elimination step at which no nonzero pivot was found.
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

BanMatrix mat_mul(const BanMatrix& a, const BanMatrix& b);
BanVector mat_vec(const BanMatrix& a, const BanVector& x);
BanMatrix transpose(const BanMatrix& a);
BanMatrix diag(const BanVector& v);
BanVector hadamard(const BanVector& x, const BanVector& y);
Ban dot(const BanVector& x, const BanVector& y);
Ban sum(const BanVector& x);

BanVector operator+(const BanVector& x, const BanVector& y);
BanVector operator-(const BanVector& x, const BanVector& y);
BanVector operator-(const BanVector& x);
BanVector operator*(const Ban& s, const BanVector& x);
BanMatrix operator+(const BanMatrix& a, const BanMatrix& b);
BanMatrix operator-(const BanMatrix& a, const BanMatrix& b);

/// Solves a X = b by LU factorization with partial pivoting. Pivots are
/// chosen by the full non-Archimedean absolute value. Throws
/// SingularMatrixError when a column has no nonzero pivot.
BanMatrix lu_solve(const BanMatrix& a, const BanMatrix& b);
BanVector lu_solve(const BanMatrix& a, const BanVector& b);
BanMatrix inverse(const BanMatrix& a);

/// sqrt(sum x_i^2); zero for the zero vector.
Ban euclidean_norm(const BanVector& x);

/// Norm taken one order at a time: the coefficient of alpha^p is the real
/// 2-norm of the alpha^p coefficients of the entries. Unlike euclidean_norm,
/// a small but nonzero leading level does not leak into the lower ones.
Ban level_norm(const BanVector& x);

}  // namespace naipm
