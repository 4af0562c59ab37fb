#pragma once

// Finitely generated subgroups of V = C^n with entries in Q(zeta_N).
//
// A ZLattice lives in the rational coordinates of Q(zeta_N)^n: coordinate
// (i, k) stands for the vector zeta_N^k e_i. The basis is (1/den) * H with H
// in Hermite normal form and den minimal, so equal lattices at the same
// conductor have identical data.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"
#include "torlat/hnf.hpp"
#include "torlat/linalg.hpp"

namespace torlat {

/// Rank over R of the real span of the vectors, decided exactly.
/// Uses the columns (x + conj x)/2 and (x - conj x)/2; the second block is
/// i * Im(x), a column scaling that does not change the rank.
inline std::size_t real_rank(const std::vector<CycVec>& vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.front().size();
  CycMatrix m(vectors.size(), 2 * n);
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      m(r, j) = real_part(vectors[r][j]);
      m(r, n + j) = imaginary_part_times_i(vectors[r][j]);
    }
  return rank(m);
}

class ZLattice {
 public:
  ZLattice() = default;

  /// Z-span of the given vectors; throws NotDiscrete when the span is not a lattice.
  static ZLattice from_generators(const std::vector<CycVec>& vectors, std::size_t dimension = 0,
                                  Conductor conductor = 1) {
    if (!vectors.empty()) dimension = vectors.front().size();
    require(dimension >= 1, ErrorKind::InvalidInput, "lattice: ambient dimension must be positive");
    for (const auto& v : vectors) {
      require(v.size() == dimension, ErrorKind::InvalidInput, "lattice: generator length mismatch");
      conductor = common_conductor(v, conductor);
    }
    RatMatrix rows(0, dimension * euler_phi(conductor));
    for (const auto& v : vectors) {
      const RatVec c = rational_coordinates(v, conductor);
      rows.append_row(std::span<const Rational>(c));
    }
    ZLattice l = from_rational_rows(rows, dimension, conductor);
    l.require_discrete();
    return l;
  }

  /// Canonical lattice spanned by rational coordinate rows (no discreteness check).
  static ZLattice from_rational_rows(const RatMatrix& rows, std::size_t dimension, Conductor conductor) {
    ZLattice l;
    l.dimension_ = dimension;
    l.conductor_ = conductor;
    const std::size_t width = dimension * euler_phi(conductor);
    require(rows.cols() == width || rows.rows() == 0, ErrorKind::InvalidInput,
            "lattice: coordinate width mismatch");
    if (rows.rows() == 0) {
      l.basis_ = IntMatrix(0, width);
      l.denominator_ = 1;
      return l;
    }
    const Integer d0 = common_denominator(rows);
    IntMatrix h = hermite_normal_form(scale_to_integers(rows, d0));
    Integer g = d0;
    for (const auto& x : h.data()) g = gcd(g, x);
    if (g != 1) {
      IntMatrix reduced(h.rows(), h.cols());
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) reduced(i, j) = h(i, j) / g;
      h = std::move(reduced);
    }
    l.basis_ = std::move(h);
    l.denominator_ = d0 / g;
    if (l.basis_.rows() == 0) l.basis_ = IntMatrix(0, width);
    return l;
  }

  std::size_t dimension() const noexcept { return dimension_; }
  Conductor conductor() const noexcept { return conductor_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& hnf() const noexcept { return basis_; }
  const Integer& denominator() const noexcept { return denominator_; }

  /// Basis rows as rational coordinates at the lattice conductor.
  RatMatrix rational_rows() const {
    RatMatrix r(basis_.rows(), basis_.cols());
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      for (std::size_t j = 0; j < basis_.cols(); ++j) r(i, j) = make_rational(basis_(i, j), denominator_);
    return r;
  }

  /// Basis rows as rational coordinates at a multiple m of the conductor.
  RatMatrix rational_rows(Conductor m) const {
    if (m == conductor_) return rational_rows();
    RatMatrix r(0, dimension_ * euler_phi(m));
    for (const auto& v : basis_vectors()) {
      const RatVec c = rational_coordinates(lift(v, m), m);
      r.append_row(std::span<const Rational>(c));
    }
    return r;
  }

  std::vector<CycVec> basis_vectors() const {
    std::vector<CycVec> out;
    const RatMatrix r = rational_rows();
    for (std::size_t i = 0; i < r.rows(); ++i)
      out.push_back(from_rational_coordinates(r.row_vector(i), conductor_, dimension_));
    return out;
  }

  /// Same lattice with coordinates over Q(zeta_m), m a multiple of the conductor.
  ZLattice lifted(Conductor m) const {
    if (m == conductor_) return *this;
    return from_rational_rows(rational_rows(m), dimension_, m);
  }

  bool is_discrete() const { return real_rank(basis_vectors()) == rank(); }

  void require_discrete() const {
    require(is_discrete(), ErrorKind::NotDiscrete,
            "Z-span is not discrete: real rank is smaller than the rank");
  }

  /// Integer coordinates of v in the basis, if v lies in the lattice.
  std::optional<std::vector<Integer>> coordinates(const CycVec& v) const {
    require(v.size() == dimension_, ErrorKind::InvalidInput, "lattice: vector length mismatch");
    const Conductor m = common_conductor(v, conductor_);
    const RatVec target = rational_coordinates(v, m);
    const RatMatrix rows = rational_rows(m);
    if (rows.rows() == 0) {
      for (const auto& x : target)
        if (!is_zero(x)) return std::nullopt;
      return std::vector<Integer>{};
    }
    const auto x = solve(rows.transpose(), std::span<const Rational>(target));
    if (!x) return std::nullopt;
    std::vector<Integer> out;
    for (const auto& q : *x) {
      if (!is_integer(q)) return std::nullopt;
      out.push_back(q.get_num());
    }
    return out;
  }

  bool contains(const CycVec& v) const { return coordinates(v).has_value(); }

  bool contains(const ZLattice& other) const {
    for (const auto& v : other.basis_vectors())
      if (!contains(v)) return false;
    return true;
  }

  /// c * Lambda for a nonzero scalar c.
  ZLattice scaled(const CycNum& c) const {
    require(!c.is_zero(), ErrorKind::DomainError, "lattice: scaling by zero");
    std::vector<CycVec> vs;
    for (const auto& v : basis_vectors()) vs.push_back(scale(c, v));
    return from_generators(vs, dimension_, conductor_);
  }

  /// Image under a linear map (an n x n matrix acting on column vectors).
  ZLattice image(const CycMatrix& g) const {
    std::vector<CycVec> vs;
    for (const auto& v : basis_vectors()) vs.push_back(mat_vec(g, v));
    return from_generators(vs, g.rows(), conductor_);
  }

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    if (a.dimension_ != b.dimension_) return false;
    if (a.conductor_ == b.conductor_)
      return a.denominator_ == b.denominator_ && a.basis_ == b.basis_;
    const Conductor m = std::lcm(a.conductor_, b.conductor_);
    return a.lifted(m) == b.lifted(m);
  }

 private:
  std::size_t dimension_ = 0;
  Conductor conductor_ = 1;
  IntMatrix basis_;
  Integer denominator_ = 1;
};

inline ZLattice lattice_from_generators(const std::vector<CycVec>& vectors) {
  return ZLattice::from_generators(vectors);
}

inline ZLattice lattice_sum(const ZLattice& a, const ZLattice& b) {
  require(a.dimension() == b.dimension(), ErrorKind::InvalidInput, "lattice_sum: dimension mismatch");
  std::vector<CycVec> vs = a.basis_vectors();
  for (auto& v : b.basis_vectors()) vs.push_back(std::move(v));
  return ZLattice::from_generators(vs, a.dimension(), std::lcm(a.conductor(), b.conductor()));
}

inline ZLattice lattice_sum(const std::vector<ZLattice>& parts) {
  require(!parts.empty(), ErrorKind::InvalidInput, "lattice_sum: no summands");
  Conductor m = 1;
  std::vector<CycVec> vs;
  for (const auto& p : parts) {
    m = std::lcm(m, p.conductor());
    for (auto& v : p.basis_vectors()) vs.push_back(std::move(v));
  }
  return ZLattice::from_generators(vs, parts.front().dimension(), m);
}

namespace detail {

/// Lattice spanned by x * rows over all integer x in the left kernel of `conditions`.
inline ZLattice sublattice_by_conditions(const ZLattice& a, Conductor m, const RatMatrix& conditions) {
  const RatMatrix rows = a.rational_rows(m);
  const IntMatrix k = integer_left_kernel(conditions);
  RatMatrix out(0, rows.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    RatVec v(rows.cols(), Rational(0));
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      if (sgn(k(i, r)) == 0) continue;
      const Rational f(k(i, r));
      for (std::size_t j = 0; j < rows.cols(); ++j) v[j] += f * rows(r, j);
    }
    out.append_row(std::span<const Rational>(v));
  }
  return ZLattice::from_rational_rows(out, a.dimension(), m);
}

/// Rows of the rational coordinates of (vector * annihilator) for every basis vector.
inline RatMatrix annihilator_conditions(const std::vector<CycVec>& vectors, const std::vector<CycVec>& annihilator,
                                        Conductor m) {
  RatMatrix c(0, annihilator.size() * euler_phi(m));
  for (const auto& v : vectors) {
    CycVec values;
    for (const auto& k : annihilator) {
      CycNum s;
      for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * k[j];
      values.push_back(s);
    }
    const RatVec r = rational_coordinates(values, m);
    c.append_row(std::span<const Rational>(r));
  }
  return c;
}

}  // namespace detail

inline ZLattice lattice_intersect(const ZLattice& a, const ZLattice& b) {
  require(a.dimension() == b.dimension(), ErrorKind::InvalidInput, "lattice_intersect: dimension mismatch");
  const Conductor m = std::lcm(a.conductor(), b.conductor());
  const RatMatrix ra = a.rational_rows(m);
  const RatMatrix rb = b.rational_rows(m);
  // x * ra = y * rb  <=>  (x, -y) in the left kernel of [ra; rb]
  RatMatrix joint(0, ra.cols());
  for (std::size_t i = 0; i < ra.rows(); ++i) joint.append_row(ra.row(i));
  for (std::size_t i = 0; i < rb.rows(); ++i) joint.append_row(rb.row(i));
  if (joint.rows() == 0) return ZLattice::from_rational_rows(RatMatrix(0, ra.cols()), a.dimension(), m);
  const IntMatrix k = integer_left_kernel(joint);
  RatMatrix out(0, ra.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    RatVec v(ra.cols(), Rational(0));
    for (std::size_t r = 0; r < ra.rows(); ++r) {
      if (sgn(k(i, r)) == 0) continue;
      const Rational f(k(i, r));
      for (std::size_t j = 0; j < ra.cols(); ++j) v[j] += f * ra(r, j);
    }
    out.append_row(std::span<const Rational>(v));
  }
  return ZLattice::from_rational_rows(out, a.dimension(), m);
}

/// Lambda intersected with the complex span of the given vectors.
inline ZLattice lattice_intersect_complex_span(const ZLattice& a, const std::vector<CycVec>& span) {
  require(!span.empty(), ErrorKind::InvalidInput, "intersect: empty span");
  Conductor m = a.conductor();
  for (const auto& v : span) m = common_conductor(v, m);
  const CycMatrix w = lift(CycMatrix::from_rows(span), m);
  const auto annihilator = kernel(w);  // w * k = 0, so the row space is {v : v.k = 0}
  if (annihilator.empty()) return a.lifted(m);
  const auto vectors = a.lifted(m).basis_vectors();
  return detail::sublattice_by_conditions(a, m, detail::annihilator_conditions(vectors, annihilator, m));
}

/// Lambda intersected with the real span of the given vectors.
inline ZLattice lattice_intersect_real_span(const ZLattice& a, const std::vector<CycVec>& span) {
  require(!span.empty(), ErrorKind::InvalidInput, "intersect: empty span");
  Conductor m = a.conductor();
  for (const auto& v : span) m = common_conductor(v, m);
  const std::size_t n = a.dimension();
  auto split = [&](const CycVec& v) {
    CycVec s(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = real_part(v[j].lift(m));
      s[n + j] = imaginary_part_times_i(v[j].lift(m));
    }
    return s;
  };
  std::vector<CycVec> rows;
  for (const auto& v : span) rows.push_back(split(v));
  const auto annihilator = kernel(CycMatrix::from_rows(rows));
  if (annihilator.empty()) return a.lifted(m);
  std::vector<CycVec> vectors;
  for (const auto& v : a.lifted(m).basis_vectors()) vectors.push_back(split(v));
  return detail::sublattice_by_conditions(a, m, detail::annihilator_conditions(vectors, annihilator, m));
}

/// [A : B] for B a sublattice of A; nullopt when the index is infinite.
inline std::optional<Integer> lattice_index(const ZLattice& a, const ZLattice& b) {
  require(a.dimension() == b.dimension(), ErrorKind::InvalidInput, "lattice_index: dimension mismatch");
  require(a.contains(b), ErrorKind::InvalidInput, "lattice_index: B is not contained in A");
  if (b.rank() < a.rank()) return std::nullopt;
  const std::size_t r = a.rank();
  IntMatrix coords(r, r);
  std::size_t i = 0;
  for (const auto& v : b.basis_vectors()) {
    const auto c = a.coordinates(v);
    for (std::size_t j = 0; j < r; ++j) coords(i, j) = (*c)[j];
    ++i;
  }
  Rational det = determinant(to_rational(coords));
  return Rational(abs(det)).get_num();
}

/// True iff g(b) lies in Lambda for every generator g and basis vector b.
inline bool invariance_check(const ZLattice& lattice, const GroupRep& group) {
  require(lattice.dimension() == group.dimension(), ErrorKind::InvalidInput,
          "invariance_check: dimension mismatch");
  const auto vectors = lattice.basis_vectors();
  for (std::size_t gi : group.generator_indices()) {
    const CycMatrix& g = group.element(gi);
    for (const auto& b : vectors)
      if (!lattice.contains(mat_vec(g, b))) return false;
  }
  return true;
}

/// gamma1 Z + gamma2 Z inside C.
class RankTwoLattice {
 public:
  RankTwoLattice(CycNum gamma1, CycNum gamma2) : g1_(std::move(gamma1)), g2_(std::move(gamma2)) {
    require(!g1_.is_zero(), ErrorKind::NotDiscrete, "rank-two lattice: zero generator");
    const CycNum t = tau();
    require(!(t - t.conj()).is_zero(), ErrorKind::NotDiscrete,
            "rank-two lattice: generators are R-linearly dependent");
  }

  const CycNum& gamma1() const noexcept { return g1_; }
  const CycNum& gamma2() const noexcept { return g2_; }
  CycNum tau() const { return g2_ / g1_; }

  ZLattice to_zlattice() const { return ZLattice::from_generators({{g1_}, {g2_}}); }

  bool contains(const CycNum& x) const { return to_zlattice().contains(CycVec{x}); }

  bool is_stable_under(const CycNum& c) const {
    return contains(c * g1_) && contains(c * g2_);
  }

 private:
  CycNum g1_;
  CycNum g2_;
};

/// { c in C : c Gamma in Gamma }, which is Z or an imaginary-quadratic order.
struct MultiplierRing {
  bool is_integers = true;
  Integer discriminant = 0;              // b^2 - 4ac of the primitive relation of tau
  Integer conductor = 1;                 // f with discriminant = f^2 * fundamental
  Integer fundamental_discriminant = 0;
  CycNum generator;                      // a * tau; the ring is Z + Z * generator

  bool contains(const CycNum& c) const {
    if (is_integers) return c.is_rational() && is_integer(c.rational_value());
    return ZLattice::from_generators({{CycNum(1)}, {generator}}).contains(CycVec{c});
  }

  std::string describe() const {
    if (is_integers) return "Z";
    return "order of discriminant " + discriminant.get_str() + " (conductor " + conductor.get_str() +
           ") in Q(sqrt(" + fundamental_discriminant.get_str() + "))";
  }
};

inline MultiplierRing multiplier_ring(const RankTwoLattice& gamma) {
  MultiplierRing ring;
  ring.generator = CycNum(1);
  const CycNum tau = gamma.tau();
  const auto poly = minimal_polynomial(tau);
  if (poly.size() != 3) return ring;
  // primitive integral relation a tau^2 + b tau + c = 0 with a > 0
  Integer den = 1;
  for (const auto& q : poly) den = lcm(den, q.get_den());
  Integer a = den;
  Integer b = Rational(poly[1] * den).get_num();
  Integer c = Rational(poly[0] * den).get_num();
  Integer g = gcd(gcd(a, b), c);
  a /= g;
  b /= g;
  c /= g;
  ring.is_integers = false;
  ring.discriminant = b * b - 4 * a * c;
  require(sgn(ring.discriminant) < 0, ErrorKind::InternalConsistency,
          "multiplier ring: non-real quadratic tau must have negative discriminant");
  ring.fundamental_discriminant = quadratic_field_discriminant(Rational(ring.discriminant));
  Integer f2 = ring.discriminant / ring.fundamental_discriminant;
  mpz_sqrt(ring.conductor.get_mpz_t(), f2.get_mpz_t());
  require(ring.conductor * ring.conductor * ring.fundamental_discriminant == ring.discriminant,
          ErrorKind::InternalConsistency, "multiplier ring: conductor is not integral");
  ring.generator = CycNum(Rational(a)) * tau;
  require(gamma.is_stable_under(ring.generator), ErrorKind::InternalConsistency,
          "multiplier ring: generator does not preserve the lattice");
  return ring;
}

struct IsogenyWitness {
  CycNum c;         // c * Q Gamma' = Q Gamma
  Integer k = 1;    // smallest k > 0 with k c Gamma' in Gamma
  Integer degree;   // [Gamma : k c Gamma']
};

/// Isogeny between C/Gamma' and C/Gamma: a scalar c with c Q Gamma' = Q Gamma.
inline std::optional<IsogenyWitness> isogeny_test(const RankTwoLattice& gamma, const RankTwoLattice& gamma_prime) {
  const CycNum& g1 = gamma.gamma1();
  const CycNum& g2 = gamma.gamma2();
  const CycNum& h1 = gamma_prime.gamma1();
  const CycNum& h2 = gamma_prime.gamma2();
  std::optional<CycNum> c;
  auto in_q_span = [&](const CycNum& x) {
    const Conductor m = common_conductor(CycVec{g1, g2, x});
    const auto s = RationalSubspaceBasis::span(euler_phi(m), {g1.lift(m).coeffs(), g2.lift(m).coeffs()});
    return s.contains(x.lift(m).coeffs());
  };
  if (in_q_span(h1) && in_q_span(h2)) {
    c = CycNum(1);
  } else {
    // alpha h2 - beta h1 = 0, alpha = a1 g1 + a2 g2, beta = b1 g1 + b2 g2
    const CycVec terms{g1 * h2, g2 * h2, -(g1 * h1), -(g2 * h1)};
    const Conductor m = common_conductor(terms);
    RatMatrix system(euler_phi(m), 4);
    for (std::size_t j = 0; j < 4; ++j) {
      const CycNum t = terms[j].lift(m);
      for (std::size_t i = 0; i < t.coeffs().size(); ++i) system(i, j) = t.coeffs()[i];
    }
    const auto k = kernel(system);
    if (k.empty()) return std::nullopt;
    const CycNum alpha = CycNum(k[0][0]) * g1 + CycNum(k[0][1]) * g2;
    require(!alpha.is_zero(), ErrorKind::InternalConsistency, "isogeny_test: degenerate kernel vector");
    c = alpha / h1;
  }
  IsogenyWitness w;
  w.c = *c;
  // k is the lcm of the denominators of c*h_i in the basis of Gamma
  const ZLattice lg = gamma.to_zlattice();
  const ZLattice lh = ZLattice::from_generators({{w.c * h1}, {w.c * h2}});
  const Conductor m = std::lcm(lg.conductor(), lh.conductor());
  const RatMatrix rows = lg.rational_rows(m);
  Integer k = 1;
  for (const auto& v : lh.basis_vectors()) {
    const RatVec target = rational_coordinates(lift(v, m), m);
    const auto x = solve(rows.transpose(), std::span<const Rational>(target));
    require(x.has_value(), ErrorKind::InternalConsistency, "isogeny_test: image outside Q Gamma");
    for (const auto& q : *x) k = lcm(k, q.get_den());
  }
  w.k = k;
  const auto idx = lattice_index(lg, lh.scaled(CycNum(Rational(k))));
  require(idx.has_value(), ErrorKind::InternalConsistency, "isogeny_test: infinite index");
  w.degree = *idx;
  return w;
}

}  // namespace torlat
