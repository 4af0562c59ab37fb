#include <gtest/gtest.h>

#include <random>

#include "torlat/cyclotomic.hpp"
#include "torlat/hnf.hpp"

using namespace torlat;

namespace {

CycNum random_element(std::mt19937_64& rng, Conductor n) {
  std::vector<Rational> poly(n);
  for (auto& c : poly) {
    const long num = static_cast<long>(rng() % 9) - 4;
    const long den = static_cast<long>(rng() % 3) + 1;
    c = make_rational(num, den);
  }
  return CycNum::from_polynomial(n, poly);
}

CycNum evaluate(const std::vector<Rational>& poly, const CycNum& x) {
  CycNum acc;
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + CycNum(poly[k]);
  return acc;
}

}  // namespace

TEST(Cyclotomic, FieldOps) {
  const CycNum i = CycNum::zeta(4);
  EXPECT_EQ(i * i, CycNum(-1));
  EXPECT_EQ(CycNum::zeta(3) + CycNum::zeta(3, 2), CycNum(-1));
  const CycNum x = CycNum(1) + CycNum::zeta(5);
  EXPECT_EQ(x.inverse() * x, CycNum(1));
  EXPECT_THROW((void)(CycNum(1) / CycNum(0)), Error);
}

TEST(Cyclotomic, CrossConductorLift) {
  // zeta_4 * zeta_3 = zeta_12^7
  EXPECT_EQ(CycNum::zeta(4) * CycNum::zeta(3), CycNum::zeta(12, 7));
  EXPECT_EQ((CycNum::zeta(4) * CycNum::zeta(3)).conductor(), 12u);
  EXPECT_EQ(CycNum::zeta(6), -CycNum::zeta(3, 2));
}

TEST(Cyclotomic, Conjugate) {
  EXPECT_EQ(CycNum::zeta(4).conj(), -CycNum::zeta(4));
  EXPECT_EQ(CycNum(make_rational(3, 7)).conj(), CycNum(make_rational(3, 7)));
  const CycNum y = CycNum::zeta(7) + CycNum(2) * CycNum::zeta(7, 3);
  EXPECT_EQ(y.conj().conj(), y);
}

TEST(Cyclotomic, MinimalPolynomial) {
  using V = std::vector<Rational>;
  EXPECT_EQ(minimal_polynomial(CycNum::zeta(3)), (V{1, 1, 1}));
  EXPECT_EQ(minimal_polynomial(CycNum(5)), (V{-5, 1}));
  EXPECT_EQ(minimal_polynomial(CycNum::zeta(8) + CycNum::zeta(8, -1)), (V{-2, 0, 1}));
  EXPECT_EQ(minimal_polynomial(CycNum::zeta(5)).size(), 5u);
}

TEST(Cyclotomic, SquareRoots) {
  for (long k : {-1L, -2L, -3L, -7L, -11L, 2L, 3L, 6L, 12L, -20L}) {
    const CycNum r = sqrt_integer(k);
    EXPECT_EQ(r * r, CycNum(k)) << k;
  }
  EXPECT_EQ(sqrt_integer(-3), CycNum(2) * CycNum::zeta(3) + CycNum(1));
}

TEST(Cyclotomic, NumericEmbed) {
  const auto i = numeric_embed(CycNum::zeta(4), 80);
  EXPECT_NEAR(i.real.to_double(), 0.0, 1e-15);
  EXPECT_NEAR(i.imag.to_double(), 1.0, 1e-15);
  const auto m = numeric_embed(CycNum(-1));
  EXPECT_NEAR(m.real.to_double(), -1.0, 1e-15);
  const auto z = numeric_embed(CycNum::zeta(3), 100);
  EXPECT_NEAR(z.real.to_double(), -0.5, 1e-15);
  EXPECT_NEAR(z.imag.to_double(), 0.8660254037844386, 1e-15);
  EXPECT_LT(z.error_bound.to_double(), 1e-28);
}

TEST(Cyclotomic, RealSign) {
  const CycNum sqrt2 = CycNum::zeta(8) + CycNum::zeta(8, -1);
  EXPECT_EQ(real_sign(sqrt2), 1);
  EXPECT_EQ(real_sign(CycNum(1) - sqrt2), -1);
  EXPECT_EQ(real_sign(sqrt2 * sqrt2 - CycNum(2)), 0);
  // 99/70 approximates sqrt2 to about 1e-4
  EXPECT_EQ(real_sign(sqrt2 - CycNum(make_rational(99, 70))), -1);
  EXPECT_THROW(real_sign(CycNum::zeta(4)), Error);
}

TEST(CyclotomicProperty, RingAxiomsAndConjugation) {
  std::mt19937_64 rng(20240611);
  for (Conductor n : {3u, 4u, 5u, 7u, 8u, 12u, 15u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CycNum x = random_element(rng, n);
      const CycNum y = random_element(rng, n);
      const CycNum z = random_element(rng, n);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
      EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
      if (!y.is_zero()) { EXPECT_EQ((x / y) * y, x); }
      EXPECT_TRUE(evaluate(minimal_polynomial(x), x).is_zero());
    }
  }
}

TEST(CyclotomicProperty, NumericEmbedRespectsArithmetic) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const CycNum x = random_element(rng, 12);
    const CycNum y = random_element(rng, 12);
    const auto ex = numeric_embed(x, 64);
    const auto ey = numeric_embed(y, 64);
    const auto es = numeric_embed(x + y, 64);
    const auto ep = numeric_embed(x * y, 64);
    const double xr = ex.real.to_double(), xi = ex.imag.to_double();
    const double yr = ey.real.to_double(), yi = ey.imag.to_double();
    EXPECT_NEAR(es.real.to_double(), xr + yr, 1e-9);
    EXPECT_NEAR(es.imag.to_double(), xi + yi, 1e-9);
    EXPECT_NEAR(ep.real.to_double(), xr * yr - xi * yi, 1e-9);
    EXPECT_NEAR(ep.imag.to_double(), xr * yi + xi * yr, 1e-9);
  }
}

TEST(Subspace, EchelonBasis) {
  RationalSubspaceBasis s(3);
  EXPECT_TRUE(s.add({1, 2, 3}));
  EXPECT_TRUE(s.add({2, 4, 7}));
  EXPECT_FALSE(s.add({3, 6, 10}));
  EXPECT_EQ(s.dimension(), 2u);
  EXPECT_TRUE(s.contains({0, 0, 1}));
  EXPECT_FALSE(s.contains({0, 1, 0}));
}

TEST(Hnf, CanonicalForm) {
  const IntMatrix a = IntMatrix::from_rows({{2, 4}, {3, 5}, {1, 1}});
  const IntMatrix h = hermite_normal_form(a);
  EXPECT_EQ(h, IntMatrix::from_rows({{1, 1}, {0, 2}}));
  const RatMatrix b = RatMatrix::from_rows({{1, 1}, {2, 2}, {0, 1}});
  const IntMatrix k = integer_left_kernel(b);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(k, IntMatrix::from_rows({{2, -1, 0}}));
}
