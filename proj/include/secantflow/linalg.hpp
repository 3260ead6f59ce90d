#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "secantflow/rational.hpp"

namespace secantflow {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<std::vector<Rational>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  std::vector<Rational> row(std::size_t r) const;

  /// [this | rhs]; row counts must agree.
  Matrix hstack(const Matrix& rhs) const;
  Matrix select_columns(std::span<const std::size_t> columns) const;
  std::vector<Rational> apply(std::span<const Rational> x) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the right nullspace, one vector per column of the result.
/// Deterministic: free variables in increasing column order, each set to 1.
Matrix kernel(const Matrix& m);

/// True iff v lies in the column span of m.
bool in_column_span(const Matrix& m, std::span<const Rational> v);

/// Basis (as columns) of colspan(a) ∩ colspan(b).
Matrix column_space_intersection(const Matrix& a, const Matrix& b);

}  // namespace secantflow
