#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hilbx/errors.hpp"
#include "hilbx/rational.hpp"

namespace hilbx {

/// Dense row-major matrix of exact rationals. Storage is 0-based; the
/// closed-form modules translate from their 1-based formulas.
class Matrix {
 public:
  /// rows x cols zero matrix. Throws DomainError if either dimension is 0.
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  static Matrix column(std::vector<Rational> entries);
  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const Rational> entries() const { return entries_; }
  std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  Matrix transpose() const;

  /// "[[a,b],[c,d]]" with integers printed bare and fractions as num/den.
  std::string pretty() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> entries_;
};

/// Thrown by inverse() on a singular input; carries the (zero) determinant.
class SingularMatrixError : public DomainError {
 public:
  explicit SingularMatrixError(Rational det)
      : DomainError("matrix is singular (determinant " + det.str() + ")"), det_(std::move(det)) {}
  const Rational& determinant() const { return det_; }

 private:
  Rational det_;
};

/// Exact product. Throws DomainError when a.cols() != b.rows().
Matrix multiply(const Matrix& a, const Matrix& b);

Matrix add(const Matrix& a, const Matrix& b);

/// Exact determinant by Bareiss fraction-free elimination on the matrix with
/// each row scaled to integers. Throws DomainError for non-square input.
Rational determinant(const Matrix& a);

/// Exact inverse by rational Gauss-Jordan. Throws SingularMatrixError.
Matrix inverse(const Matrix& a);

}  // namespace hilbx
