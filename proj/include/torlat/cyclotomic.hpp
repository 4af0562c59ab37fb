#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycNum stores its conductor N and the phi(N) rational coordinates of the
// element in the power basis 1, z, ..., z^(phi(N)-1), reduced modulo the N-th
// cyclotomic polynomial. The representation is canonical for a fixed
// conductor; values of different conductors are lifted to the lcm first.

#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torlat/error.hpp"
#include "torlat/linalg.hpp"
#include "torlat/rational.hpp"

namespace torlat {

using Conductor = std::uint32_t;

namespace detail {

using Poly = std::vector<Rational>;  // ascending coefficients

inline void trim(Poly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

/// Exact quotient of a by a monic b (remainder must vanish).
inline Poly exact_divide_monic(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  Poly q(a.size() - db, Rational(0));
  for (std::size_t i = a.size(); i-- > db;) {
    const Rational c = a[i];
    if (is_zero(c)) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  require(a.empty(), ErrorKind::InternalConsistency, "cyclotomic division left a remainder");
  return q;
}

inline Poly compute_cyclotomic(Conductor n);

}  // namespace detail

/// Coefficients (ascending, monic, integral) of the n-th cyclotomic polynomial.
inline const std::vector<Rational>& cyclotomic_polynomial(Conductor n) {
  require(n >= 1, ErrorKind::DomainError, "conductor must be positive");
  static std::mutex mutex;
  static std::map<Conductor, detail::Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  detail::Poly p = detail::compute_cyclotomic(n);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

namespace detail {

inline Poly compute_cyclotomic(Conductor n) {
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (Conductor d = 1; d < n; ++d) {
    if (n % d == 0) p = exact_divide_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

/// Remainder of p modulo the monic polynomial m, padded to deg(m) entries.
inline Poly reduce_mod(Poly p, const Poly& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = p.size(); i-- > dm;) {
    const Rational c = p[i];
    if (is_zero(c)) continue;
    for (std::size_t j = 0; j <= dm; ++j) p[i - dm + j] -= c * m[j];
  }
  p.resize(dm, Rational(0));
  return p;
}

}  // namespace detail

class CycNum {
 public:
  CycNum() : conductor_(1), coeffs_{Rational(0)} {}
  CycNum(int v) : conductor_(1), coeffs_{Rational(v)} {}  // NOLINT: implicit by design of scalars
  CycNum(long v) : conductor_(1), coeffs_{Rational(v)} {}  // NOLINT
  CycNum(const Rational& q) : conductor_(1), coeffs_{q} {}  // NOLINT
  CycNum(const Integer& z) : conductor_(1), coeffs_{Rational(z)} {}  // NOLINT

  /// zeta_n^k
  static CycNum zeta(Conductor n, std::int64_t k = 1) {
    require(n >= 1, ErrorKind::DomainError, "zeta: conductor must be positive");
    std::int64_t e = k % static_cast<std::int64_t>(n);
    if (e < 0) e += n;
    detail::Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = 1;
    return from_polynomial(n, std::move(p));
  }

  /// The element sum_k poly[k] * zeta_n^k; poly may have any length.
  static CycNum from_polynomial(Conductor n, std::vector<Rational> poly) {
    require(n >= 1, ErrorKind::DomainError, "conductor must be positive");
    const auto& phi = cyclotomic_polynomial(n);
    if (poly.size() > n) {
      // use z^n = 1 first so that the long division stays short
      std::vector<Rational> folded(n, Rational(0));
      for (std::size_t i = 0; i < poly.size(); ++i) folded[i % n] += poly[i];
      poly = std::move(folded);
    }
    CycNum x;
    x.conductor_ = n;
    x.coeffs_ = detail::reduce_mod(std::move(poly), phi);
    return x;
  }

  /// Coordinates must already be reduced (length phi(n)).
  static CycNum from_coefficients(Conductor n, std::vector<Rational> coeffs) {
    require(coeffs.size() == euler_phi(n), ErrorKind::InvalidInput,
            "CycNum: coefficient count must equal phi(conductor)");
    CycNum x;
    x.conductor_ = n;
    x.coeffs_ = std::move(coeffs);
    return x;
  }

  Conductor conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size(); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (sgn(c) != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return false;
    return true;
  }

  /// Rational value; requires is_rational().
  Rational rational_value() const {
    require(is_rational(), ErrorKind::DomainError, "CycNum is not rational");
    return coeffs_[0];
  }

  /// Image in Q(zeta_m) for a multiple m of the conductor.
  CycNum lift(Conductor m) const {
    if (m == conductor_) return *this;
    require(m % conductor_ == 0, ErrorKind::DomainError, "lift: target conductor is not a multiple");
    const Conductor step = m / conductor_;
    detail::Poly p(static_cast<std::size_t>(step) * coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k * step] = coeffs_[k];
    return from_polynomial(m, std::move(p));
  }

  /// Image under zeta -> zeta^-1 (complex conjugation).
  CycNum conj() const {
    if (conductor_ <= 2) return *this;
    detail::Poly p(conductor_, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (sgn(coeffs_[k]) == 0) continue;
      p[(conductor_ - k) % conductor_] += coeffs_[k];
    }
    return from_polynomial(conductor_, std::move(p));
  }

  /// Image under the Galois automorphism zeta -> zeta^a, gcd(a, N) = 1.
  CycNum galois(std::int64_t a) const {
    const auto n = static_cast<std::int64_t>(conductor_);
    require(std::gcd(((a % n) + n) % n, n) == 1 || n == 1, ErrorKind::DomainError,
            "galois: exponent not coprime to conductor");
    detail::Poly p(conductor_, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (sgn(coeffs_[k]) == 0) continue;
      std::int64_t e = (static_cast<std::int64_t>(k) * a) % n;
      if (e < 0) e += n;
      p[static_cast<std::size_t>(e)] += coeffs_[k];
    }
    return from_polynomial(conductor_, std::move(p));
  }

  bool is_real() const { return *this == conj(); }

  CycNum inverse() const;

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycNum& operator+=(const CycNum& y) { return *this = *this + y; }
  CycNum& operator-=(const CycNum& y) { return *this = *this - y; }
  CycNum& operator*=(const CycNum& y) { return *this = *this * y; }
  CycNum& operator/=(const CycNum& y) { return *this = *this / y; }

  friend CycNum operator+(const CycNum& x, const CycNum& y) {
    if (x.conductor_ != y.conductor_) {
      const Conductor m = std::lcm(x.conductor_, y.conductor_);
      return x.lift(m) + y.lift(m);
    }
    CycNum r = x;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] += y.coeffs_[k];
    return r;
  }

  friend CycNum operator-(const CycNum& x, const CycNum& y) {
    if (x.conductor_ != y.conductor_) {
      const Conductor m = std::lcm(x.conductor_, y.conductor_);
      return x.lift(m) - y.lift(m);
    }
    CycNum r = x;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] -= y.coeffs_[k];
    return r;
  }

  friend CycNum operator*(const CycNum& x, const CycNum& y) {
    if (x.is_rational()) return y.scaled(x.coeffs_[0]);
    if (y.is_rational()) return x.scaled(y.coeffs_[0]);
    if (x.conductor_ != y.conductor_) {
      const Conductor m = std::lcm(x.conductor_, y.conductor_);
      return x.lift(m) * y.lift(m);
    }
    detail::Poly p(x.coeffs_.size() + y.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (sgn(x.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
        if (sgn(y.coeffs_[j]) == 0) continue;
        p[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return from_polynomial(x.conductor_, std::move(p));
  }

  friend CycNum operator/(const CycNum& x, const CycNum& y) {
    if (y.is_rational()) {
      require(sgn(y.coeffs_[0]) != 0, ErrorKind::DomainError, "division by zero");
      return x.scaled(1 / y.coeffs_[0]);
    }
    return x * y.inverse();
  }

  friend bool operator==(const CycNum& x, const CycNum& y) {
    if (x.conductor_ == y.conductor_) return x.coeffs_ == y.coeffs_;
    const Conductor m = std::lcm(x.conductor_, y.conductor_);
    return x.lift(m).coeffs_ == y.lift(m).coeffs_;
  }
  friend bool operator!=(const CycNum& x, const CycNum& y) { return !(x == y); }

  CycNum scaled(const Rational& q) const {
    CycNum r = *this;
    if (sgn(q) == 0) {
      for (auto& c : r.coeffs_) c = 0;
      return r;
    }
    for (auto& c : r.coeffs_) c *= q;
    return r;
  }

  /// Human-readable form, e.g. "1/2 + 3*z3^2"; z<N> denotes zeta_N.
  std::string to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (sgn(c) == 0) continue;
      Rational a = abs(c);
      if (!first) out << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) out << "-";
      first = false;
      if (k == 0) {
        out << a.get_str();
      } else {
        if (a != 1) out << a.get_str() << "*";
        out << "z" << conductor_;
        if (k > 1) out << "^" << k;
      }
    }
    if (first) out << "0";
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

  std::size_t hash() const {
    std::size_t h = std::hash<Conductor>{}(conductor_);
    for (const auto& c : coeffs_) {
      h ^= std::hash<std::string>{}(c.get_str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  Conductor conductor_;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const CycNum& x) { return x.is_zero(); }
inline CycNum conj(const CycNum& x) { return x.conj(); }

namespace detail {

// Polynomial helpers for the extended Euclidean inverse.
inline Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly p(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
  trim(p);
  return p;
}

inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {{}, a};
  Poly q(a.size() - db, Rational(0));
  const Rational lead_inv = 1 / b.back();
  for (std::size_t i = a.size(); i-- > db;) {
    const Rational c = a[i] * lead_inv;
    if (is_zero(c)) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

}  // namespace detail

inline CycNum CycNum::inverse() const {
  require(!is_zero(), ErrorKind::DomainError, "division by zero");
  if (is_rational()) return CycNum(1 / coeffs_[0]);
  // Extended Euclid: find s with s*a + t*phi = 1.
  detail::Poly r0 = cyclotomic_polynomial(conductor_);
  detail::Poly r1 = coeffs_;
  detail::trim(r1);
  detail::Poly s0;       // coefficient of a for r0
  detail::Poly s1{Rational(1)};  // coefficient of a for r1
  while (r1.size() > 1) {
    auto [q, r] = detail::poly_divmod(r0, r1);
    detail::Poly s = detail::poly_sub(s0, detail::poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  require(r1.size() == 1, ErrorKind::InternalConsistency,
          "CycNum inverse: element shares a factor with the cyclotomic polynomial");
  const Rational c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  return from_polynomial(conductor_, std::move(s1));
}

struct CycNumHash {
  std::size_t operator()(const CycNum& x) const { return x.hash(); }
};

using CycVec = std::vector<CycNum>;
using CycMatrix = Matrix<CycNum>;

/// Smallest conductor that holds every entry.
template <class Range>
Conductor common_conductor(const Range& values, Conductor start = 1) {
  Conductor n = start;
  for (const CycNum& x : values) n = std::lcm(n, x.conductor());
  return n;
}

inline CycVec lift(const CycVec& v, Conductor n) {
  CycVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.lift(n));
  return out;
}

inline CycMatrix lift(const CycMatrix& m, Conductor n) {
  CycMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).lift(n);
  return out;
}

/// Conjugate transpose.
inline CycMatrix adjoint(const CycMatrix& m) {
  CycMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).conj();
  return out;
}

inline CycNum trace(const CycMatrix& m) {
  CycNum t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Rational coordinates of v in Q(zeta_n)^len: entry-major blocks of phi(n).
inline RatVec rational_coordinates(const CycVec& v, Conductor n) {
  RatVec out;
  out.reserve(v.size() * euler_phi(n));
  for (const auto& x : v) {
    const CycNum y = x.lift(n);
    out.insert(out.end(), y.coeffs().begin(), y.coeffs().end());
  }
  return out;
}

inline CycVec from_rational_coordinates(const RatVec& r, Conductor n, std::size_t length) {
  const std::size_t phi = euler_phi(n);
  require(r.size() == phi * length, ErrorKind::InvalidInput, "rational coordinate length mismatch");
  CycVec v;
  v.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    v.push_back(CycNum::from_coefficients(
        n, std::vector<Rational>(r.begin() + static_cast<std::ptrdiff_t>(i * phi),
                                 r.begin() + static_cast<std::ptrdiff_t>((i + 1) * phi))));
  }
  return v;
}

/// Monic minimal polynomial over Q, ascending coefficients (last entry is 1).
inline std::vector<Rational> minimal_polynomial(const CycNum& x) {
  RationalSubspaceBasis powers(x.degree());
  std::vector<RatVec> raw;  // raw power vectors for the dependency solve
  CycNum p(1);
  p = p.lift(x.conductor());
  for (std::size_t k = 0;; ++k) {
    const RatVec v = p.coeffs();
    if (powers.contains(v)) {
      // solve v = sum c_i raw_i
      RatMatrix a(v.size(), raw.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < raw.size(); ++j) a(i, j) = raw[j][i];
      auto c = solve(a, std::span<const Rational>(v));
      require(c.has_value(), ErrorKind::InternalConsistency, "minimal polynomial solve failed");
      std::vector<Rational> poly(k + 1);
      for (std::size_t i = 0; i < k; ++i) poly[i] = -(*c)[i];
      poly[k] = 1;
      return poly;
    }
    powers.add(v);
    raw.push_back(v);
    p = p * x;
  }
}

/// Q-dimension of the field generated by the given values (a Q-algebra
/// spanned by monomials, closed under multiplication) and its echelon basis.
inline RationalSubspaceBasis generated_field(const std::vector<CycNum>& values, Conductor n) {
  RationalSubspaceBasis span(euler_phi(n));
  std::vector<CycNum> basis{CycNum(1).lift(n)};
  span.add(basis.front().coeffs());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t current = basis.size();
    for (const auto& v : values) {
      const CycNum w = v.lift(n);
      for (std::size_t i = 0; i < current; ++i) {
        CycNum prod = basis[i] * w;
        if (span.add(prod.coeffs())) {
          basis.push_back(std::move(prod));
          grew = true;
        }
      }
    }
  }
  return span;
}

/// sqrt(k) as an element of a cyclotomic field (Gauss sums); sqrt(k)^2 == k.
inline CycNum sqrt_integer(long k) {
  if (k == 0) return CycNum(0);
  const auto dec = squarefree_decomposition(Integer(k));
  CycNum root(Rational(dec.square));
  for (const auto& [p, e] : factor(dec.core)) {
    (void)e;
    const long prime = p.get_si();
    CycNum s;
    if (prime == 2) {
      s = CycNum::zeta(8, 1) + CycNum::zeta(8, 7);
    } else {
      CycNum g;
      for (long a = 1; a < prime; ++a) {
        const int l = legendre_symbol(a, prime);
        g += l > 0 ? CycNum::zeta(static_cast<Conductor>(prime), a)
                   : -CycNum::zeta(static_cast<Conductor>(prime), a);
      }
      // g^2 = (-1)^((p-1)/2) p
      s = prime % 4 == 1 ? g : -(CycNum::zeta(4, 1) * g);
    }
    root = root * s;
  }
  if (dec.sign < 0) root = root * CycNum::zeta(4, 1);
  require(root * root == CycNum(k), ErrorKind::InternalConsistency, "sqrt_integer check failed");
  return root;
}

inline CycNum real_part(const CycNum& x) { return (x + x.conj()).scaled(Rational(1, 2)); }
/// i * Im(x) = (x - conj x)/2; real-linear and zero iff x is real.
inline CycNum imaginary_part_times_i(const CycNum& x) { return (x - x.conj()).scaled(Rational(1, 2)); }

// ---------------------------------------------------------------------------
// Numeric embedding (diagnostics, and sign certification of real values).

/// Minimal RAII wrapper over an MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 53) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }

  std::string to_string(int digits = 20) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return buf.data();
  }

 private:
  mpfr_t value_;
};

struct ComplexApprox {
  BigFloat real;
  BigFloat imag;
  BigFloat error_bound;  // absolute bound for each of real and imag
};

/// Approximates x under zeta_N -> exp(2 pi i / N). The returned values are
/// within 2^(1-precision) * (1 + sum |coeffs|) of the true parts.
inline ComplexApprox numeric_embed(const CycNum& x, mpfr_prec_t precision = 53) {
  require(precision >= 53, ErrorKind::InvalidInput, "numeric_embed: precision must be >= 53");
  const mpfr_prec_t work = precision + 64;
  BigFloat re(work), im(work), angle(work), s(work), c(work), coeff(work), term(work), abs_sum(work);
  const Conductor n = x.conductor();
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
    const Rational& q = x.coeffs()[k];
    if (sgn(q) == 0) continue;
    mpfr_set_q(coeff.get(), q.get_mpq_t(), MPFR_RNDN);
    BigFloat a(work);
    mpfr_abs(a.get(), coeff.get(), MPFR_RNDU);
    mpfr_add(abs_sum.get(), abs_sum.get(), a.get(), MPFR_RNDU);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_ui(angle.get(), angle.get(), 2 * static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), n, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), c.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), s.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
  }
  ComplexApprox out{BigFloat(precision), BigFloat(precision), BigFloat(precision)};
  mpfr_set(out.real.get(), re.get(), MPFR_RNDN);
  mpfr_set(out.imag.get(), im.get(), MPFR_RNDN);
  mpfr_add_ui(out.error_bound.get(), abs_sum.get(), 1, MPFR_RNDU);
  mpfr_mul_2si(out.error_bound.get(), out.error_bound.get(), 1 - static_cast<long>(precision), MPFR_RNDU);
  return out;
}

/// Sign of a real element under the standard embedding, decided exactly:
/// zero is detected symbolically, nonzero values by refining the numeric
/// enclosure until it excludes zero.
inline int real_sign(const CycNum& x) {
  require(x.is_real(), ErrorKind::DomainError, "real_sign: value is not real");
  if (x.is_zero()) return 0;
  for (mpfr_prec_t p = 64; p <= (1 << 20); p *= 2) {
    const auto approx = numeric_embed(x, p);
    BigFloat mag(p);
    mpfr_abs(mag.get(), approx.real.get(), MPFR_RNDD);
    if (mpfr_cmp(mag.get(), approx.error_bound.get()) > 0) return approx.real.sign();
  }
  fail(ErrorKind::InternalConsistency, "real_sign: precision limit reached");
}

}  // namespace torlat
