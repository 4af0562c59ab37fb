#pragma once

// Quaternion algebras (a, b / Q), imaginary-quadratic subfields, the complex
// torus V_c / Lambda for an order Lambda with complex structure "right
// multiplication by c", and its exact endomorphism ring.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"
#include "torlat/hnf.hpp"
#include "torlat/lattice.hpp"
#include "torlat/schur.hpp"

namespace torlat {

/// x0 + x1 i + x2 j + x3 k.
template <class T>
struct QuatElement {
  std::array<T, 4> x{T(0), T(0), T(0), T(0)};

  friend bool operator==(const QuatElement& p, const QuatElement& q) { return p.x == q.x; }
  bool is_pure() const { return x[0] == T(0); }
};

using RatQuat = QuatElement<Rational>;
using CycQuat = QuatElement<CycNum>;

inline CycQuat to_cyc(const RatQuat& q) {
  CycQuat out;
  for (std::size_t t = 0; t < 4; ++t) out.x[t] = CycNum(q.x[t]);
  return out;
}

/// i^2 = a, j^2 = b, ij = -ji = k.
class QuatAlgebra {
 public:
  QuatAlgebra(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    require(!is_zero(a_) && !is_zero(b_), ErrorKind::InvalidInput, "quaternion algebra parameters must be nonzero");
  }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  bool definite() const { return sgn(a_) < 0 && sgn(b_) < 0; }

  template <class T>
  QuatElement<T> mul(const QuatElement<T>& p, const QuatElement<T>& q) const {
    const T a(a_), b(b_), ab(a_ * b_);
    const auto& x = p.x;
    const auto& y = q.x;
    QuatElement<T> r;
    r.x[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - ab * x[3] * y[3];
    r.x[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
    r.x[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
    r.x[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return r;
  }

  template <class T>
  T reduced_norm(const QuatElement<T>& p) const {
    const auto& x = p.x;
    return x[0] * x[0] - T(a_) * x[1] * x[1] - T(b_) * x[2] * x[2] + T(a_ * b_) * x[3] * x[3];
  }

  /// Matrix of y -> p y (left) or y -> y p (right) on coordinate columns.
  template <class T>
  Matrix<T> multiplication_matrix(const QuatElement<T>& p, bool left) const {
    Matrix<T> m(4, 4);
    for (std::size_t col = 0; col < 4; ++col) {
      QuatElement<T> e;
      e.x[col] = T(1);
      const QuatElement<T> img = left ? mul(p, e) : mul(e, p);
      for (std::size_t row = 0; row < 4; ++row) m(row, col) = img.x[row];
    }
    return m;
  }

  std::string describe() const { return "(" + a_.get_str() + ", " + b_.get_str() + ")"; }

 private:
  Rational a_;
  Rational b_;
};

inline RatQuat quat(long x0, long x1, long x2, long x3) {
  return RatQuat{{Rational(x0), Rational(x1), Rational(x2), Rational(x3)}};
}

struct SubfieldWitness {
  std::array<Integer, 3> r;  // x = r1 i + r2 j + r3 k
  RatQuat x;
  Rational t;                // x^2 = t < 0
  Integer discriminant;      // of Q(sqrt t)
};

/// Pure quaternions r1 i + r2 j + r3 k with x^2 < 0, primitive integer r with |r_t| <= bound,
/// by height, then by support size, then i before j before k. One witness per field.
inline std::vector<SubfieldWitness> imaginary_quadratic_subfields(const QuatAlgebra& h, long bound) {
  require(bound >= 1, ErrorKind::InvalidInput, "subfield search bound must be positive");
  std::vector<std::array<long, 3>> triples;
  for (long r1 = -bound; r1 <= bound; ++r1)
    for (long r2 = -bound; r2 <= bound; ++r2)
      for (long r3 = -bound; r3 <= bound; ++r3) {
        const std::array<long, 3> r{r1, r2, r3};
        const auto lead = std::find_if(r.begin(), r.end(), [](long v) { return v != 0; });
        if (lead == r.end() || *lead < 0) continue;
        if (std::gcd(std::gcd(r1, r2), r3) != 1) continue;
        triples.push_back(r);
      }
  auto key = [](const std::array<long, 3>& r) {
    long height = 0, support = 0, first = 3;
    for (long t = 2; t >= 0; --t) {
      height = std::max(height, std::abs(r[t]));
      if (r[t] != 0) {
        ++support;
        first = t;
      }
    }
    return std::make_tuple(height, support, first, -r[0], -r[1], -r[2]);
  };
  std::stable_sort(triples.begin(), triples.end(), [&](const auto& p, const auto& q) { return key(p) < key(q); });

  std::vector<SubfieldWitness> out;
  for (const auto& r : triples) {
    const RatQuat x{{Rational(0), Rational(r[0]), Rational(r[1]), Rational(r[2])}};
    const RatQuat sq = h.mul(x, x);
    require(sq.x[1] == 0 && sq.x[2] == 0 && sq.x[3] == 0, ErrorKind::InternalConsistency,
            "pure quaternion squares to a non-scalar");
    const Rational t = sq.x[0];
    if (sgn(t) >= 0) continue;
    const Integer disc = quadratic_field_discriminant(t);
    if (std::any_of(out.begin(), out.end(), [&](const auto& w) { return w.discriminant == disc; })) continue;
    out.push_back({{Integer(r[0]), Integer(r[1]), Integer(r[2])}, x, t, disc});
  }
  return out;
}

inline std::optional<SubfieldWitness> imaginary_quadratic_subfield(const QuatAlgebra& h, long bound) {
  auto all = imaginary_quadratic_subfields(h, bound);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline std::vector<RatQuat> lipschitz_order() { return {quat(1, 0, 0, 0), quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1)}; }

struct QuatTorus {
  QuatAlgebra algebra;
  std::vector<RatQuat> order;  // Z-basis of Lambda
  ZLattice lattice;            // Lambda in Q^4
  CycQuat c;
  CycMatrix j;                 // right multiplication by c
  bool rational_direction = false;
  std::optional<RatQuat> direction;    // primitive rational pure quaternion q with c in R q
  std::optional<Rational> direction_square;
  std::optional<Integer> field_discriminant;  // of F = Q(q)
};

namespace detail {

inline CycVec quat_vector(const RatQuat& q) {
  CycVec v;
  for (const auto& t : q.x) v.emplace_back(t);
  return v;
}

}  // namespace detail

inline QuatTorus build_quat_torus(const QuatAlgebra& h, const std::vector<RatQuat>& order, const CycQuat& c) {
  require(order.size() == 4, ErrorKind::InvalidInput, "order needs four basis elements");
  std::vector<CycVec> gens;
  for (const auto& q : order) gens.push_back(detail::quat_vector(q));
  ZLattice lattice = ZLattice::from_generators(gens, 4, 1);
  require(lattice.rank() == 4, ErrorKind::InvalidInput, "order basis is not of rank 4");
  require(lattice.contains(detail::quat_vector(quat(1, 0, 0, 0))), ErrorKind::InvalidInput, "order does not contain 1");
  for (const auto& p : order)
    for (const auto& q : order)
      require(lattice.contains(detail::quat_vector(h.mul(p, q))), ErrorKind::InvalidInput,
              "order basis is not closed under multiplication");

  for (const auto& t : c.x) require(t == t.conj(), ErrorKind::DomainError, "c must have real coordinates");
  const CycQuat sq = h.mul(c, c);
  require(sq == CycQuat{{CycNum(-1), CycNum(0), CycNum(0), CycNum(0)}}, ErrorKind::DomainError, "c^2 != -1");

  QuatTorus t{h, order, lattice, c, h.multiplication_matrix(c, false), false, std::nullopt, std::nullopt, std::nullopt};
  const Conductor m = common_conductor(t.j.data());
  const CycMatrix id = lift(CycMatrix::identity(4), m);
  require(lift(t.j * t.j, m) == CycNum(-1) * id, ErrorKind::InternalConsistency, "J^2 != -1");
  for (const auto& u : lipschitz_order()) {
    const CycMatrix l = h.multiplication_matrix(to_cyc(u), true);
    require(lift(l * t.j, m) == lift(t.j * l, m), ErrorKind::InternalConsistency,
            "right multiplication does not commute with left multiplication");
  }

  // c = lambda q with q rational iff all ratios of the pure coordinates are rational
  std::size_t lead = 1;
  while (lead < 4 && c.x[lead].is_zero()) ++lead;
  require(lead < 4, ErrorKind::InternalConsistency, "c has zero pure part");
  bool rational = true;
  std::array<Rational, 4> ratios{Rational(0), Rational(0), Rational(0), Rational(0)};
  for (std::size_t s = 1; s < 4 && rational; ++s) {
    const CycNum ratio = c.x[s] / c.x[lead];
    rational = ratio.is_rational();
    if (rational) ratios[s] = ratio.rational_value();
  }
  t.rational_direction = rational;
  if (rational) {
    Integer den = 1;
    for (std::size_t s = 1; s < 4; ++s) den = lcm(den, ratios[s].get_den());
    Integer g = 0;
    for (std::size_t s = 1; s < 4; ++s) g = gcd(g, Rational(ratios[s] * den).get_num());
    RatQuat q;
    for (std::size_t s = 1; s < 4; ++s) q.x[s] = ratios[s] * den / g;
    const Rational qq = h.mul(q, q).x[0];
    require(sgn(qq) < 0, ErrorKind::InternalConsistency, "direction of c does not square to a negative rational");
    t.direction = q;
    t.direction_square = qq;
    t.field_discriminant = quadratic_field_discriminant(qq);
  }
  return t;
}

/// c = (sqrt(3)/3) i + (sqrt(6)/3) j, a square root of -1 in (-1,-1) whose pure part
/// (1, sqrt(2), 0) is not a real multiple of a rational vector.
inline CycQuat generic_complex_structure() {
  const CycNum s3 = sqrt_integer(3);
  const CycNum s2 = sqrt_integer(2);
  const CycNum third(make_rational(1, 3));
  return CycQuat{{CycNum(0), s3 * third, s2 * s3 * third, CycNum(0)}};
}

enum class EndomorphismTag { DefiniteQuaternionOrder, M2ImaginaryQuadratic, Other };

inline std::string to_string(EndomorphismTag t) {
  switch (t) {
    case EndomorphismTag::DefiniteQuaternionOrder: return "order-in-definite-quaternion";
    case EndomorphismTag::M2ImaginaryQuadratic: return "order-in-M2-of-imaginary-quadratic";
    case EndomorphismTag::Other: return "other";
  }
  return "other";
}

struct EndomorphismRing {
  std::vector<IntMatrix> basis;  // in coordinates of the order basis
  std::size_t rank = 0;
  bool contains_identity = false;
  bool closed = false;
  std::vector<std::vector<std::vector<Integer>>> structure;  // basis[a] * basis[b] = sum structure[a][b][c] basis[c]
  std::optional<std::vector<RatQuat>> left_multipliers;       // u_a with basis[a] = left multiplication by u_a
  std::size_t center_dimension = 0;
  std::optional<Integer> center_discriminant;                 // of the quadratic center, when 2-dimensional
  EndomorphismTag tag = EndomorphismTag::Other;
  std::optional<bool> abelian;
};

namespace detail {

inline std::optional<std::vector<Rational>> coordinates_in(const std::vector<RatMatrix>& basis, const RatMatrix& x) {
  RatMatrix a(x.data().size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < x.data().size(); ++r) a(r, c) = basis[c].data()[r];
  return solve(a, std::span<const Rational>(x.data()));
}

}  // namespace detail

inline EndomorphismRing torus_endomorphisms(const QuatTorus& t) {
  // B: columns are the order basis in standard coordinates
  RatMatrix b(4, 4);
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t row = 0; row < 4; ++row) b(row, col) = t.order[col].x[row];
  const auto binv = inverse(b);
  require(binv.has_value(), ErrorKind::InvalidInput, "order basis is singular");
  auto cyc = [](const RatMatrix& r) {
    CycMatrix m(r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) m(i, j) = CycNum(r(i, j));
    return m;
  };
  const CycMatrix jb = cyc(*binv) * t.j * cyc(b);
  const Conductor m = common_conductor(jb.data());
  const CycMatrix jl = lift(jb, m);
  const std::size_t phi = euler_phi(m);

  // M J' - J' M = 0 for integer M; unknown (r, s) sits at column 4 r + s
  RatMatrix eqs(16 * phi, 16);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) {
          CycNum coef(0);
          if (r == p) coef += jl(s, q);
          if (s == q) coef -= jl(p, r);
          const CycNum lifted = coef.lift(m);
          for (std::size_t e = 0; e < phi; ++e) eqs((4 * p + q) * phi + e, 4 * r + s) = lifted.coeffs()[e];
        }
  const IntMatrix k = integer_left_kernel(eqs.transpose());

  EndomorphismRing ring;
  ring.rank = k.rows();
  std::vector<RatMatrix> rat;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    IntMatrix mi(4, 4);
    RatMatrix ri(4, 4);
    for (std::size_t e = 0; e < 16; ++e) {
      mi(e / 4, e % 4) = k(i, e);
      ri(e / 4, e % 4) = Rational(k(i, e));
    }
    ring.basis.push_back(std::move(mi));
    rat.push_back(std::move(ri));
  }
  const RatMatrix id = RatMatrix::identity(4);
  const auto one = detail::coordinates_in(rat, id);
  ring.contains_identity = one && std::all_of(one->begin(), one->end(), [](const Rational& x) { return is_integer(x); });
  ring.closed = true;
  ring.structure.assign(ring.rank, std::vector<std::vector<Integer>>(ring.rank));
  for (std::size_t a = 0; a < ring.rank && ring.closed; ++a)
    for (std::size_t c = 0; c < ring.rank && ring.closed; ++c) {
      const auto x = detail::coordinates_in(rat, rat[a] * rat[c]);
      ring.closed = x.has_value();
      for (std::size_t e = 0; ring.closed && e < ring.rank; ++e) {
        ring.closed = is_integer((*x)[e]);
        if (ring.closed) ring.structure[a][c].push_back((*x)[e].get_num());
      }
    }
  require(ring.contains_identity && ring.closed, ErrorKind::InternalConsistency,
          "endomorphisms do not form a ring with identity");

  // left multiplications: X = B M B^-1 equals L_u with u = X(1)
  std::vector<RatQuat> lefts;
  for (const auto& r : rat) {
    const RatMatrix x = b * r * *binv;
    RatQuat u;
    for (std::size_t row = 0; row < 4; ++row) u.x[row] = x(row, 0);
    if (!(t.algebra.multiplication_matrix(u, true) == x)) break;
    lefts.push_back(u);
  }
  if (lefts.size() == ring.rank) ring.left_multipliers = lefts;

  // center of Q End: z = sum z_a M_a with z M_c = M_c z
  RatMatrix ceq(16 * ring.rank, ring.rank);
  for (std::size_t c = 0; c < ring.rank; ++c)
    for (std::size_t a = 0; a < ring.rank; ++a) {
      const RatMatrix comm = rat[a] * rat[c] - rat[c] * rat[a];
      for (std::size_t e = 0; e < 16; ++e) ceq(16 * c + e, a) = comm.data()[e];
    }
  const auto center = kernel(ceq);
  ring.center_dimension = center.size();
  if (center.size() == 2) {
    std::vector<RatMatrix> zs;
    for (const auto& z : center) {
      RatMatrix s(4, 4);
      for (std::size_t a = 0; a < ring.rank; ++a) s = s + z[a] * rat[a];
      zs.push_back(s);
    }
    const RatMatrix& zn = detail::coordinates_in({id}, zs[0]) ? zs[1] : zs[0];
    // zn^2 = p zn + q
    const auto pq = detail::coordinates_in({zn, id}, zn * zn);
    require(pq.has_value(), ErrorKind::InternalConsistency, "quadratic center element has no quadratic relation");
    const Rational disc = (*pq)[0] * (*pq)[0] + 4 * (*pq)[1];
    if (sgn(disc) < 0) ring.center_discriminant = quadratic_field_discriminant(disc);
  }

  if (ring.rank == 4 && ring.left_multipliers && t.algebra.definite()) {
    ring.tag = EndomorphismTag::DefiniteQuaternionOrder;
    ring.abelian = false;  // no complex abelian surface has such an endomorphism ring
  } else if (ring.rank == 8 && ring.center_discriminant) {
    ring.tag = EndomorphismTag::M2ImaginaryQuadratic;
    ring.abelian = true;
  }
  return ring;
}

/// Lambda in C^2 = (V, J), in the C-basis f1 = 1, f2 = first of i, j, k off the line C f1.
inline ZLattice quat_torus_complex_lattice(const QuatTorus& t) {
  const Conductor m = std::lcm(common_conductor(t.j.data()), Conductor(4));
  const CycMatrix j = lift(t.j, m);
  const CycVec f1 = lift(detail::quat_vector(quat(1, 0, 0, 0)), m);
  const CycVec jf1 = mat_vec(j, f1);
  std::optional<CycVec> f2;
  for (std::size_t e = 1; e < 4; ++e) {
    RatQuat q;
    q.x[e] = 1;
    const CycVec v = lift(detail::quat_vector(q), m);
    CycMatrix test(0, 4);
    for (const auto& w : {f1, jf1, v}) test.append_row(std::span<const CycNum>(w));
    if (rank(test) == 3) {
      f2 = v;
      break;
    }
  }
  require(f2.has_value(), ErrorKind::InternalConsistency, "no complex basis for V_c");
  const CycVec jf2 = mat_vec(j, *f2);
  CycMatrix p(4, 4);
  const std::array<const CycVec*, 4> cols{&f1, &jf1, &*f2, &jf2};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) p(r, c) = (*cols[c])[r].lift(m);
  const auto pinv = inverse(p);
  require(pinv.has_value(), ErrorKind::InternalConsistency, "complex basis of V_c is singular");
  const CycNum i = CycNum::zeta(4);
  std::vector<CycVec> gens;
  for (const auto& q : t.order) {
    const CycVec w = mat_vec(*pinv, lift(detail::quat_vector(q), m));
    gens.push_back({w[0] + i * w[1], w[2] + i * w[3]});
  }
  return ZLattice::from_generators(gens, 2, m);
}

struct QuaternionStructure {
  QuatAlgebra algebra;
  CycMatrix x;  // x^2 = a
  CycMatrix y;  // y^2 = b, xy = -yx
};

/// For n = 2, a 4-dimensional Q-span of G is a quaternion algebra: H itself when the
/// Schur index is 2, M_2(Q) when it is 1.
inline std::optional<QuaternionStructure> quaternion_algebra_of(const GroupRep& g) {
  if (g.dimension() != 2) return std::nullopt;
  const Conductor m = g.conductor();
  const std::size_t phi = euler_phi(m);
  RationalSubspaceBasis span(4 * phi);
  std::vector<CycMatrix> basis;
  auto flat = [&](const CycMatrix& a) {
    RatVec v;
    const CycMatrix l = lift(a, m);
    for (const auto& e : l.data()) {
      const CycNum c = e.lift(m);
      v.insert(v.end(), c.coeffs().begin(), c.coeffs().end());
    }
    return v;
  };
  for (const auto& e : g.elements())
    if (span.add(flat(e))) basis.push_back(lift(e, m));
  if (basis.size() != 4) return std::nullopt;
  // trace-zero part
  std::vector<CycNum> traces;
  for (const auto& b : basis) traces.push_back(trace(b));
  for (const auto& t : traces)
    if (!t.is_rational()) return std::nullopt;
  RatMatrix tr(1, 4);
  for (std::size_t c = 0; c < 4; ++c) tr(0, c) = traces[c].rational_value();
  std::vector<CycMatrix> pure;
  for (const auto& k : kernel(tr)) {
    CycMatrix s(2, 2);
    for (std::size_t c = 0; c < 4; ++c) s = s + CycNum(k[c]) * basis[c];
    pure.push_back(lift(s, m));
  }
  if (pure.size() != 3) return std::nullopt;
  const CycMatrix id = lift(CycMatrix::identity(2), m);
  auto scalar = [&](const CycMatrix& a) -> std::optional<Rational> {
    const CycMatrix l = lift(a, m);
    if (!(l == CycNum(l(0, 0)) * id) || !l(0, 0).is_rational()) return std::nullopt;
    return l(0, 0).rational_value();
  };
  const CycMatrix x = pure[0];
  const auto a = scalar(x * x);
  require(a.has_value(), ErrorKind::InternalConsistency, "trace-zero element does not square to a rational scalar");
  // y in the pure part with xy + yx = 0
  RatMatrix anti(4 * phi, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    const RatVec v = flat(x * pure[c] + pure[c] * x);
    for (std::size_t r = 0; r < v.size(); ++r) anti(r, c) = v[r];
  }
  const auto ys = kernel(anti);
  if (ys.empty()) return std::nullopt;
  CycMatrix y(2, 2);
  for (std::size_t c = 0; c < 3; ++c) y = y + CycNum(ys[0][c]) * pure[c];
  y = lift(y, m);
  const auto b = scalar(y * y);
  require(b.has_value(), ErrorKind::InternalConsistency, "anticommuting element does not square to a rational scalar");
  return QuaternionStructure{QuatAlgebra(*a, *b), x, y};
}

enum class AbelianVerdict { Abelian, NotAbelian, Disjunction };

inline std::string to_string(AbelianVerdict v) {
  switch (v) {
    case AbelianVerdict::Abelian: return "abelian";
    case AbelianVerdict::NotAbelian: return "not-abelian";
    case AbelianVerdict::Disjunction: return "not-abelian-or-product-of-cm-curves";
  }
  return "";
}

struct TorusEvidence {
  bool abelian = false;
  std::string source;
};

struct RatLVerdict {
  BilinearType branch = BilinearType::Orthogonal;
  bool h_definite = false;  // predicted definiteness of H
  AbelianVerdict verdict = AbelianVerdict::Disjunction;
  std::string justification;
};

inline RatLVerdict ratL_verdict(const CharacterProfile& profile, std::size_t n,
                                const std::optional<TorusEvidence>& evidence = std::nullopt) {
  require(profile.schur.index == 2, ErrorKind::InvalidInput, "ratL verdict needs Schur index 2");
  require(profile.field.kind == FieldKind::Rational, ErrorKind::InternalConsistency,
          "Schur index 2 with a non-rational character admits no invariant lattice");
  require(n % 2 == 0, ErrorKind::InternalConsistency, "Schur index 2 with odd n");
  require(profile.bilinear.type != BilinearType::Complex, ErrorKind::InternalConsistency,
          "rational character with a complex bilinear type");
  RatLVerdict v;
  v.branch = profile.bilinear.type;
  if (v.branch == BilinearType::Orthogonal) {
    v.h_definite = false;
    v.verdict = AbelianVerdict::Abelian;
    v.justification = "orthogonal: H indefinite, V/Lambda abelian";
    return v;
  }
  v.h_definite = true;
  if (evidence) {
    v.verdict = evidence->abelian ? AbelianVerdict::Abelian : AbelianVerdict::NotAbelian;
    v.justification = "symplectic: " + evidence->source;
  } else {
    v.verdict = AbelianVerdict::Disjunction;
    v.justification = "symplectic: H definite; no torus evidence";
  }
  return v;
}

}  // namespace torlat
