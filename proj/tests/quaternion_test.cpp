#include <gtest/gtest.h>

#include <random>

#include "torlat/catalog.hpp"
#include "torlat/forge.hpp"
#include "torlat/quaternion.hpp"

using namespace torlat;

namespace {

const QuatAlgebra kHam(-1, -1);

RatQuat random_quat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  RatQuat q;
  for (auto& c : q.x) c = make_rational(d(rng), den(rng));
  return q;
}

CycQuat real_quat(long x0, long x1, long x2, long x3) { return to_cyc(quat(x0, x1, x2, x3)); }

}  // namespace

TEST(Quat, Arithmetic) {
  EXPECT_EQ(kHam.mul(quat(0, 1, 0, 0), quat(0, 0, 1, 0)), quat(0, 0, 0, 1));
  EXPECT_EQ(kHam.mul(quat(0, 0, 1, 0), quat(0, 1, 0, 0)), quat(0, 0, 0, -1));
  EXPECT_EQ(kHam.reduced_norm(quat(1, 1, 1, 1)), 4);
  // k^2 = -ab in any (a, b)
  const QuatAlgebra h(2, -5);
  EXPECT_EQ(h.mul(quat(0, 0, 0, 1), quat(0, 0, 0, 1)), quat(10, 0, 0, 0));
}

TEST(Quat, NormMultiplicativeAndAssociative) {
  std::mt19937_64 rng(99);
  for (const auto& h : {QuatAlgebra(-1, -1), QuatAlgebra(-1, -3), QuatAlgebra(2, 3), QuatAlgebra(make_rational(1, 2), -7)})
    for (int t = 0; t < 50; ++t) {
      const RatQuat x = random_quat(rng), y = random_quat(rng), z = random_quat(rng);
      EXPECT_EQ(h.reduced_norm(h.mul(x, y)), h.reduced_norm(x) * h.reduced_norm(y));
      EXPECT_EQ(h.mul(h.mul(x, y), z), h.mul(x, h.mul(y, z)));
    }
}

TEST(Quat, Definiteness) {
  EXPECT_TRUE(kHam.definite());
  EXPECT_FALSE(QuatAlgebra(1, 1).definite());
  EXPECT_FALSE(QuatAlgebra(-1, 3).definite());
  // (a, b) ~ (b, a) ~ (a, -ab)
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{-1, -1}, {-1, 3}, {2, -5}, {-2, -3}, {3, 7}}) {
    const bool d = QuatAlgebra(a, b).definite();
    EXPECT_EQ(QuatAlgebra(b, a).definite(), d);
    EXPECT_EQ(QuatAlgebra(a, -a * b).definite(), d);
  }
  EXPECT_THROW(QuatAlgebra(0, 1), Error);
}

TEST(Quat, Subfields) {
  const auto w = imaginary_quadratic_subfield(kHam, 1);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->t, -1);
  EXPECT_EQ(w->x, quat(0, 1, 0, 0));
  EXPECT_EQ(w->discriminant, -4);

  const auto w3 = imaginary_quadratic_subfield(QuatAlgebra(-1, -3), 1);
  ASSERT_TRUE(w3);
  EXPECT_TRUE(w3->t == -1 || w3->t == -3);
  bool found3 = false;
  for (const auto& s : imaginary_quadratic_subfields(QuatAlgebra(-1, -3), 1)) {
    EXPECT_EQ(QuatAlgebra(-1, -3).mul(s.x, s.x), RatQuat({s.t, 0, 0, 0}));
    found3 |= s.discriminant == -3;
  }
  EXPECT_TRUE(found3);

  bool found2 = false;
  for (const auto& s : imaginary_quadratic_subfields(kHam, 1)) found2 |= s.discriminant == -8;
  EXPECT_TRUE(found2);
  EXPECT_EQ(kHam.mul(quat(0, 0, 1, 1), quat(0, 0, 1, 1)), quat(-2, 0, 0, 0));

  // the split algebra (1, 1) still contains Q(i), through k^2 = -ab
  const auto split = imaginary_quadratic_subfield(QuatAlgebra(1, 1), 1);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->x, quat(0, 0, 0, 1));
}

TEST(QuatTorus, Construction) {
  const auto t = build_quat_torus(kHam, lipschitz_order(), real_quat(0, 1, 0, 0));
  EXPECT_TRUE(t.rational_direction);
  EXPECT_EQ(*t.field_discriminant, -4);

  const CycQuat c = generic_complex_structure();
  EXPECT_EQ(kHam.mul(c, c), real_quat(-1, 0, 0, 0));
  const auto g = build_quat_torus(kHam, lipschitz_order(), c);
  EXPECT_FALSE(g.rational_direction);
  const CycMatrix j2 = g.j * g.j;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(j2(r, s), CycNum(r == s ? -1 : 0));
  for (long s : {1L, -1L})
    for (std::size_t e = 0; e < 4; ++e) {
      RatQuat u;
      u.x[e] = s;
      const CycMatrix l = kHam.multiplication_matrix(to_cyc(u), true);
      EXPECT_TRUE(l * g.j == g.j * l);
    }

  try {
    build_quat_torus(kHam, lipschitz_order(), CycQuat{{CycNum(make_rational(1, 2)), 0, 0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
  EXPECT_THROW(build_quat_torus(kHam, {quat(1, 0, 0, 0), quat(0, 2, 0, 0), quat(0, 0, 2, 0), quat(0, 0, 0, 3)},
                                real_quat(0, 1, 0, 0)),
               Error);
}

TEST(QuatTorus, GenericEndomorphismsAreLipschitz) {
  const auto t = build_quat_torus(kHam, lipschitz_order(), generic_complex_structure());
  const auto e = torus_endomorphisms(t);
  EXPECT_EQ(e.rank, 4u);
  EXPECT_EQ(e.tag, EndomorphismTag::DefiniteQuaternionOrder);
  ASSERT_TRUE(e.abelian.has_value());
  EXPECT_FALSE(*e.abelian);
  ASSERT_TRUE(e.left_multipliers.has_value());
  // the left multipliers form a Z-basis of the Lipschitz order
  std::vector<CycVec> u;
  for (const auto& q : *e.left_multipliers) u.push_back({CycNum(q.x[0]), CycNum(q.x[1]), CycNum(q.x[2]), CycNum(q.x[3])});
  EXPECT_EQ(ZLattice::from_generators(u, 4, 1), t.lattice);
  // structure constants of End agree with quaternion products of the identified basis
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const RatQuat p = kHam.mul((*e.left_multipliers)[a], (*e.left_multipliers)[b]);
      RatQuat s;
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t k = 0; k < 4; ++k) s.x[k] += Rational(e.structure[a][b][c]) * (*e.left_multipliers)[c].x[k];
      EXPECT_EQ(p, s);
    }
}

TEST(QuatTorus, RationalDirectionHasRank8) {
  for (const auto& c : {real_quat(0, 1, 0, 0), real_quat(0, 0, 1, 0)}) {
    const auto t = build_quat_torus(kHam, lipschitz_order(), c);
    const auto e = torus_endomorphisms(t);
    EXPECT_EQ(e.rank, 8u);
    EXPECT_EQ(e.center_dimension, 2u);
    EXPECT_EQ(e.tag, EndomorphismTag::M2ImaginaryQuadratic);
    EXPECT_EQ(*e.center_discriminant, -4);
    EXPECT_TRUE(*e.abelian);
  }
  // c = (i + j) / sqrt(2): direction i + j, field Q(sqrt -2)
  const CycNum r = sqrt_integer(2) * CycNum(make_rational(1, 2));
  const auto t = build_quat_torus(kHam, lipschitz_order(), CycQuat{{CycNum(0), r, r, CycNum(0)}});
  EXPECT_TRUE(t.rational_direction);
  EXPECT_EQ(*t.field_discriminant, -8);
  const auto e = torus_endomorphisms(t);
  EXPECT_EQ(e.rank, 8u);
  EXPECT_EQ(*e.center_discriminant, -8);
}

TEST(QuatTorus, EndomorphismRingIsRing) {
  for (const auto& c : {generic_complex_structure(), real_quat(0, 0, 0, 1)}) {
    const auto e = torus_endomorphisms(build_quat_torus(kHam, lipschitz_order(), c));
    EXPECT_TRUE(e.contains_identity);
    EXPECT_TRUE(e.closed);
    // associativity of the structure constants
    for (std::size_t a = 0; a < e.rank; ++a)
      for (std::size_t b = 0; b < e.rank; ++b)
        for (std::size_t d = 0; d < e.rank; ++d) {
          std::vector<Integer> left(e.rank, 0), right(e.rank, 0);
          for (std::size_t x = 0; x < e.rank; ++x)
            for (std::size_t y = 0; y < e.rank; ++y) {
              left[y] += e.structure[a][b][x] * e.structure[x][d][y];
              right[y] += e.structure[b][d][x] * e.structure[a][x][y];
            }
          EXPECT_EQ(left, right);
        }
  }
}

TEST(QuatTorus, ComplexCoordinatesSplit) {
  const auto t = build_quat_torus(kHam, lipschitz_order(), real_quat(0, 1, 0, 0));
  const auto lam = quat_torus_complex_lattice(t);
  const CycNum i = CycNum::zeta(4);
  EXPECT_EQ(lam, ZLattice::from_generators({{1, 0}, {i, 0}, {0, 1}, {0, i}}, 2));
  const auto sp = split_as_order_module(lam, ImaginaryQuadraticOrder::from_discriminant(-4));
  EXPECT_EQ(sp.factors.size(), 2u);
}

TEST(QuatGroup, Q8AlgebraIsHamiltonian) {
  const auto q = quaternion_algebra_of(catalog_group("Q8"));
  ASSERT_TRUE(q.has_value());
  EXPECT_TRUE(q->algebra.definite());
  const CycMatrix id = CycMatrix::identity(2);
  EXPECT_EQ(lift(q->x * q->x, 4), lift(CycNum(q->algebra.a()) * id, 4));
  EXPECT_EQ(lift(q->y * q->y, 4), lift(CycNum(q->algebra.b()) * id, 4));
  EXPECT_EQ(lift(q->x * q->y + q->y * q->x, 4), lift(CycMatrix(2, 2), 4));
  // x, y, xy and 1 span the Q-span of the group
  auto flat = [](const CycMatrix& m) { return rational_coordinates(lift(CycVec(m.data()), 4), 4); };
  const auto span = RationalSubspaceBasis::span(8, {flat(id), flat(q->x), flat(q->y), flat(q->x * q->y)});
  EXPECT_EQ(span.dimension(), 4u);
  const auto q8 = catalog_group("Q8");
  for (const auto& g : q8.elements()) EXPECT_TRUE(span.contains(flat(g)));
  // S3 spans M2(Q), the split algebra
  const auto s3 = quaternion_algebra_of(catalog_group("S3-standard"));
  ASSERT_TRUE(s3.has_value());
  EXPECT_FALSE(s3->algebra.definite());
  EXPECT_FALSE(quaternion_algebra_of(catalog_group("C4-i")).has_value());
  EXPECT_FALSE(quaternion_algebra_of(catalog_group("G4")).has_value());
}

TEST(RatL, Verdicts) {
  const auto q8 = catalog_group("Q8");
  const auto p = character_profile(q8);
  const auto none = ratL_verdict(p, 2);
  EXPECT_EQ(none.branch, BilinearType::Symplectic);
  EXPECT_TRUE(none.h_definite);
  EXPECT_EQ(none.verdict, AbelianVerdict::Disjunction);
  EXPECT_EQ(ratL_verdict(p, 2, TorusEvidence{true, "split"}).verdict, AbelianVerdict::Abelian);
  EXPECT_EQ(ratL_verdict(p, 2, TorusEvidence{false, "endomorphisms"}).verdict, AbelianVerdict::NotAbelian);

  auto orth = p;
  orth.bilinear.type = BilinearType::Orthogonal;
  const auto o = ratL_verdict(orth, 2);
  EXPECT_EQ(o.verdict, AbelianVerdict::Abelian);
  EXPECT_FALSE(o.h_definite);

  EXPECT_THROW(ratL_verdict(p, 3), Error);
  auto bad = p;
  bad.field.kind = FieldKind::ImaginaryQuadratic;
  EXPECT_THROW(ratL_verdict(bad, 2), Error);
  EXPECT_THROW(ratL_verdict(character_profile(catalog_group("S3-standard")), 2), Error);
}
