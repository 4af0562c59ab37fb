#pragma once

// Dense matrices and exact Gaussian elimination over any field type T that
// supports +, -, *, / and an `is_zero(const T&)` overload.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "torlat/error.hpp"
#include "torlat/rational.hpp"

namespace torlat {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorKind::InvalidInput, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    require(r.size() == cols_, ErrorKind::InvalidInput, "row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix rows_slice(std::size_t first, std::size_t count) const {
    Matrix m(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
    return m;
  }

  Matrix cols_slice(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::InvalidInput, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero(b(k, j))) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::InvalidInput,
            "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::InvalidInput,
            "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  std::vector<T> apply(std::span<const T> v) const {
    require(v.size() == cols_, ErrorKind::InvalidInput, "matrix-vector shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_zero(v[j]) || is_zero((*this)(i, j))) continue;
        out[i] += (*this)(i, j) * v[j];
      }
    return out;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct Echelon {
  Matrix<T> reduced;                // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form.
template <class T>
Echelon<T> rref(Matrix<T> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    const T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.rows_slice(0, r), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).pivots.size();
}

/// Basis of { x : a x = 0 }.
template <class T>
std::vector<std::vector<T>> kernel(const Matrix<T>& a) {
  const auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[f] = T(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, if one exists.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, std::span<const T> b) {
  require(b.size() == a.rows(), ErrorKind::InvalidInput, "solve: shape mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto e = rref(aug);
  std::vector<T> x(a.cols(), T(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, a.cols());
  }
  return x;
}

template <class T>
T determinant(Matrix<T> a) {
  require(a.square(), ErrorKind::InvalidInput, "determinant of a non-square matrix");
  T det(1);
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det = det * a(c, c);
    const T inv = T(1) / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      const T f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) {
        if (!is_zero(a(c, j))) a(i, j) -= f * a(c, j);
      }
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  require(a.square(), ErrorKind::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.cols_slice(n, n);
}

using RatVec = std::vector<Rational>;
using RatMatrix = Matrix<Rational>;

/// A Q-subspace of Q^d kept as a reduced echelon basis; the canonical
/// carrier for rational spans.
class RationalSubspaceBasis {
 public:
  RationalSubspaceBasis() = default;
  explicit RationalSubspaceBasis(std::size_t ambient_dimension) : ambient_(ambient_dimension) {}

  static RationalSubspaceBasis span(std::size_t ambient_dimension, const std::vector<RatVec>& vectors) {
    RationalSubspaceBasis s(ambient_dimension);
    for (const auto& v : vectors) s.add(v);
    return s;
  }

  std::size_t ambient_dimension() const noexcept { return ambient_; }
  std::size_t dimension() const noexcept { return rows_.size(); }
  const std::vector<RatVec>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Reduces v against the basis; the result is zero iff v lies in the span.
  RatVec reduce(RatVec v) const {
    require(v.size() == ambient_, ErrorKind::InvalidInput, "subspace: dimension mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (is_zero(f)) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
        if (!is_zero(rows_[i][j])) v[j] -= f * rows_[i][j];
      }
    }
    return v;
  }

  bool contains(const RatVec& v) const {
    const auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return is_zero(x); });
  }

  /// Adds v; returns true when the dimension grew.
  bool add(const RatVec& v) {
    RatVec r = reduce(v);
    std::size_t p = 0;
    while (p < ambient_ && is_zero(r[p])) ++p;
    if (p == ambient_) return false;
    const Rational inv = 1 / r[p];
    for (std::size_t j = p; j < ambient_; ++j) r[j] *= inv;
    for (auto& row : rows_) {
      const Rational f = row[p];
      if (is_zero(f)) continue;
      for (std::size_t j = p; j < ambient_; ++j) {
        if (!is_zero(r[j])) row[j] -= f * r[j];
      }
    }
    // keep rows sorted by pivot
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
    return true;
  }

  /// Coordinates of v in the echelon basis (v must lie in the span).
  RatVec coordinates(const RatVec& v) const {
    require(contains(v), ErrorKind::InvalidInput, "subspace: vector outside span");
    RatVec c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  friend bool operator==(const RationalSubspaceBasis& a, const RationalSubspaceBasis& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<RatVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace torlat
