#include "secantflow/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace secantflow {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<Rational>>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

std::vector<Rational> Matrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Rational> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_)};
}

Matrix Matrix::hstack(const Matrix& rhs) const {
  if (rows_ != rhs.rows_) throw std::invalid_argument("hstack: row count mismatch");
  Matrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, cols_ + c) = rhs(r, c);
  }
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> columns) const {
  Matrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < columns.size(); ++k) out(r, k) = (*this)(r, columns[k]);
  return out;
}

std::vector<Rational> Matrix::apply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_zero(x[c])) out[r] += (*this)(r, c) * x[c];
  return out;
}

RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && is_zero(m(r, c))) ++r;
    if (r == m.rows()) continue;
    if (r != pivot_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(pivot_row, k));
    Rational inv = 1 / m(pivot_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(pivot_row, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || is_zero(m(i, c))) continue;
      Rational factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= factor * m(pivot_row, k);
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(basis, m.cols());
}

bool in_column_span(const Matrix& m, std::span<const Rational> v) {
  if (v.size() != m.rows()) throw std::invalid_argument("in_column_span: length mismatch");
  Matrix augmented(m.rows(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) augmented(r, 0) = v[r];
  return rank(m.hstack(augmented)) == rank(m);
}

Matrix column_space_intersection(const Matrix& a, const Matrix& b) {
  // x in ker [A | -B] gives A x_a = B x_b in both spans; the images span the intersection.
  Matrix neg_b = b;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) neg_b(r, c) = -b(r, c);
  Matrix k = kernel(a.hstack(neg_b));
  std::vector<std::vector<Rational>> images;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    std::vector<Rational> xa(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) xa[i] = k(i, j);
    images.push_back(a.apply(xa));
  }
  Matrix spanning = Matrix::from_columns(images, a.rows());
  // Keep an independent subset of the images.
  RowEchelon e = rref(spanning);
  return spanning.select_columns(e.pivots);
}

}  // namespace secantflow
