#pragma once

// Row-style Hermite normal form over Z and the integer kernels built on it.

#include <cstddef>
#include <vector>

#include "torlat/linalg.hpp"
#include "torlat/rational.hpp"

namespace torlat {

using IntMatrix = Matrix<Integer>;

/// Hermite normal form of the row lattice of `a`, zero rows removed.
/// Pivots are positive, entries above a pivot lie in [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool have_pivot = false;
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        if (best == m || abs(a(i, c)) < abs(a(best, c))) best = i;
      }
      if (best == m) break;
      have_pivot = true;
      a.swap_rows(best, r);
      bool cleared = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        const Integer q = floor_div(a(i, c), a(r, c));
        for (std::size_t j = c; j < n; ++j) {
          if (sgn(a(r, j)) != 0) a(i, j) -= q * a(r, j);
        }
        if (sgn(a(i, c)) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!have_pivot) continue;
    if (sgn(a(r, c)) < 0) {
      for (std::size_t j = c; j < n; ++j) a(r, j) = -a(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Integer q = floor_div(a(i, c), a(r, c));
      if (sgn(q) == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        if (sgn(a(r, j)) != 0) a(i, j) -= q * a(r, j);
      }
    }
    ++r;
  }
  return a.rows_slice(0, r);
}

/// Pivot column of every row of a matrix in echelon form.
inline std::vector<std::size_t> echelon_pivots(const IntMatrix& h) {
  std::vector<std::size_t> p;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && sgn(h(i, c)) == 0) ++c;
    p.push_back(c);
  }
  return p;
}

/// Least common multiple of all denominators.
inline Integer common_denominator(const RatMatrix& a) {
  Integer d = 1;
  for (const auto& x : a.data()) d = lcm(d, x.get_den());
  return d;
}

inline IntMatrix scale_to_integers(const RatMatrix& a, const Integer& d) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational x = a(i, j) * d;
      require(is_integer(x), ErrorKind::InternalConsistency, "scale_to_integers: non-integral entry");
      out(i, j) = x.get_num();
    }
  return out;
}

/// Basis (in Hermite normal form) of the lattice { x in Z^m : x a = 0 }.
inline IntMatrix integer_left_kernel(const RatMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const Integer d = common_denominator(a);
  IntMatrix aug(m, n + m);
  const IntMatrix ai = scale_to_integers(a, d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = ai(i, j);
    aug(i, n + i) = 1;
  }
  const IntMatrix h = hermite_normal_form(std::move(aug));
  IntMatrix k(0, m);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < n && zero; ++j) zero = sgn(h(i, j)) == 0;
    if (!zero) continue;
    std::vector<Integer> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = h(i, n + j);
    k.append_row(std::span<const Integer>(row));
  }
  return k;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

}  // namespace torlat
