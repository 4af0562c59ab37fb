#pragma once

// Exact integers and rationals (GMP) plus the handful of elementary number
// theory helpers the rest of the library needs.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torlat/error.hpp"

namespace torlat {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline Rational make_rational(long num, long den = 1) {
  require(den != 0, ErrorKind::DomainError, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  require(sgn(den) != 0, ErrorKind::DomainError, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or a JSON-style pair already split by the caller.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    fail(ErrorKind::InvalidInput, "cannot parse rational '" + text + "'");
  }
  require(sgn(q.get_den()) != 0, ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer floor(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

inline Integer ceil(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Prime factorisation by trial division; desk-scale inputs only.
inline std::vector<std::pair<Integer, unsigned>> factor(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

/// Writes n = sign * square^2 * core with core squarefree and positive.
struct SquarefreeDecomposition {
  int sign = 1;
  Integer square = 1;
  Integer core = 1;
};

inline SquarefreeDecomposition squarefree_decomposition(const Integer& n) {
  require(sgn(n) != 0, ErrorKind::DomainError, "squarefree part of zero");
  SquarefreeDecomposition d;
  d.sign = sgn(n) < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    for (unsigned i = 0; i < e / 2; ++i) d.square *= p;
    if (e % 2 == 1) d.core *= p;
  }
  return d;
}

/// Fundamental discriminant of Q(sqrt(t)) for a nonzero, non-square rational t.
inline Integer quadratic_field_discriminant(const Rational& t) {
  require(sgn(t) != 0, ErrorKind::DomainError, "Q(sqrt(0)) is not a quadratic field");
  const Integer prod = t.get_num() * t.get_den();
  const auto d = squarefree_decomposition(prod);
  require(!(d.sign > 0 && d.core == 1), ErrorKind::DomainError,
          "Q(sqrt(t)) is Q for a rational square t");
  Integer core = d.sign * d.core;
  Integer m4 = core % 4;
  if (m4 < 0) m4 += 4;
  return m4 == 1 ? core : Integer(4 * core);
}

inline int legendre_symbol(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  long result = 1;
  long base = r;
  long e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace torlat
