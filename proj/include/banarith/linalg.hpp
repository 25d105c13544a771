#pragma once

#include <cstddef>
#include <vector>

#include "banarith/rational.hpp"

namespace banarith {

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<std::vector<Rational>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  std::vector<Rational> row(std::size_t r) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::vector<Rational> apply_matrix(const Matrix& m, const std::vector<Rational>& v);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& m);

/// Columns form a basis of the right kernel.
Matrix nullspace(const Matrix& m);

/// Columns of `m` selected greedily to form a basis of its column space.
Matrix column_basis(const Matrix& m);

/// Horizontal concatenation; row counts must agree.
Matrix hconcat(const Matrix& a, const Matrix& b);

/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Whether the column spaces of a and b coincide (both live in Q^rows).
bool same_column_space(const Matrix& a, const Matrix& b);

}  // namespace banarith
