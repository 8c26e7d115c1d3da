#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edmrank/rational.hpp"

namespace edmrank {

// Dense matrix over an exact scalar type T (Rational, or a rational-function
// field). T needs +, -, *, /, is_zero(), and construction from small ints.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(std::vector<std::vector<T>> rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("matrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = std::move(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
    Matrix s(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j) s(i, j) = (*this)(ri[i], ci[j]);
    return s;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: shape mismatch in product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r(m.rows_, m.cols_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = s * m.data_[k];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix: shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

namespace detail {

// Fraction-free (Bareiss) elimination. The update
//   M(i,j) <- (M(i,j)*M(r,c) - M(i,c)*M(r,j)) / prev
// keeps every intermediate entry equal to a minor of the input, so the
// division is exact; over a field it is exact regardless. Row swaps flip the
// determinant sign; for a square matrix with no skipped column the last pivot
// is the determinant.
template <typename T>
struct Elimination {
  int rank = 0;
  int sign = 1;
  bool column_skipped = false;
  T last_pivot = T(1);
};

template <typename T>
Elimination<T> bareiss(Matrix<T> m) {
  Elimination<T> out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  T prev = T(1);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m(pr, c).is_zero()) ++pr;
    if (pr == rows) {
      out.column_skipped = true;
      continue;
    }
    if (pr != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(pr, j), m(r, j));
      out.sign = -out.sign;
    }
    const T pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m(i, j) = (m(i, j) * pivot - m(i, c) * m(r, j)) / prev;
      m(i, c) = T(0);
    }
    prev = pivot;
    out.last_pivot = pivot;
    ++out.rank;
    ++r;
  }
  return out;
}

}  // namespace detail

template <typename T>
int matrix_rank(const Matrix<T>& m) {
  return detail::bareiss(m).rank;
}

template <typename T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix: determinant of non-square");
  if (m.rows() == 0) return T(1);
  const auto e = detail::bareiss(m);
  if (e.rank < static_cast<int>(m.rows()) || e.column_skipped) return T(0);
  return e.sign > 0 ? e.last_pivot : T(0) - e.last_pivot;
}

// One exact solution of A x = b (free variables set to zero), or nullopt when
// the system is inconsistent.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("matrix: rhs length mismatch");
  const std::size_t rows = a.rows(), cols = a.cols();
  Matrix<T> m(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
    m(i, cols) = b[i];
  }
  // Gauss-Jordan over the field; pivots normalized to 1.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m(pr, c).is_zero()) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = c; j <= cols; ++j) std::swap(m(pr, j), m(r, j));
    const T inv_pivot = T(1) / m(r, c);
    for (std::size_t j = c; j <= cols; ++j) m(r, j) = m(r, j) * inv_pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j <= cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!m(i, cols).is_zero()) return std::nullopt;
  std::vector<T> x(cols, T(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m(i, cols);
  return x;
}

// Does every column of b lie in the column space of a?
template <typename T>
bool columns_in_span(const Matrix<T>& a, const Matrix<T>& b) {
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!solve(a, b.column(j))) return false;
  return true;
}

}  // namespace edmrank
