#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torlat/catalog.hpp"
#include "torlat/forge.hpp"
#include "torlat/reflection_tori.hpp"

using namespace torlat;

namespace {

CycVec vec(std::initializer_list<CycNum> xs) { return CycVec(xs); }

const CycNum kI = CycNum::zeta(4);

ZLattice gaussian_square() {
  return ZLattice::from_generators({vec({1, 0}), vec({kI, 0}), vec({0, 1}), vec({0, kI})}, 2);
}

ZLattice g4_orbit_lattice(const GroupRep& g4) {
  return orbit_lattice_over_order(g4, classify_character_field(g4), ImaginaryQuadraticOrder::from_discriminant(-3),
                                  vec({1, 0}));
}

ZLattice a2_ds_lattice(const GroupRep& a2) {
  const auto f = classify_character_field(a2);
  return extend_rank_2n(construct_rank_n(a2, f, schur_index(a2, f).witness), CycNum::zeta(3));
}

bool proportional(const CycVec& a, const CycVec& b) {
  CycMatrix m(0, a.size());
  m.append_row(std::span<const CycNum>(a));
  m.append_row(std::span<const CycNum>(b));
  return rank(m) == 1;
}

/// prod (1 - theta_t) * prod <e_t, e_{t+1}> over unit roots, written with unnormalized roots.
CycNum unit_root_formula(const GroupRep& g, const std::vector<ReflectionData>& refs,
                         const std::vector<std::size_t>& cycle) {
  const HermitianForm h = invariant_hermitian(g);
  CycNum c(1);
  for (std::size_t t = 0; t < cycle.size(); ++t) {
    const auto& a = refs[cycle[t]];
    const auto& b = refs[cycle[(t + 1) % cycle.size()]];
    c = c * (CycNum(1) - a.theta) * h.inner(a.root, b.root) / h.inner(a.root, a.root);
  }
  return c;
}

}  // namespace

TEST(Reflections, ChooseGenerating) {
  const auto b2 = catalog_group("Weyl-B2");
  const auto rb = choose_generating_reflections(b2);
  ASSERT_EQ(rb.size(), 2u);
  EXPECT_TRUE(proportional(rb[0].root, vec({1, 0})));
  EXPECT_TRUE(proportional(rb[1].root, vec({1, -1})));

  const auto g4 = catalog_group("G4");
  const auto rg = choose_generating_reflections(g4);
  ASSERT_EQ(rg.size(), 2u);
  for (const auto& r : rg) {
    EXPECT_FALSE(r.theta.is_rational());
    EXPECT_EQ(r.theta * r.theta * r.theta, CycNum(1));
  }

  try {
    choose_generating_reflections(catalog_group("Q8"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Reflections, GaussianSquareUnderB2) {
  const auto b2 = catalog_group("Weyl-B2");
  const auto lam = gaussian_square();
  ASSERT_TRUE(invariance_check(lam, b2));
  const auto d = line_lattice_decomposition(lam, b2, choose_generating_reflections(b2));
  EXPECT_TRUE(d.direct_sum);
  EXPECT_EQ(d.lines[0].lattice, ZLattice::from_generators({vec({1, 0}), vec({kI, 0})}, 2));
  EXPECT_EQ(d.lines[1].lattice, ZLattice::from_generators({vec({1, -1}), vec({kI, -kI})}, 2));
  // Z[i] e1 + Z[i] (e1 - e2) is all of Z[i]^2
  EXPECT_EQ(d.index, 1);
  EXPECT_EQ(oracle::brute_force_index(lam, d.sublattice), 1u);
  EXPECT_FALSE(d.s_determinant.is_zero());
  for (const auto& l : d.lines) EXPECT_EQ(l.multipliers.discriminant, -4);
}

TEST(Reflections, IndexMatchesCosetCount) {
  const auto g4 = catalog_group("G4");
  const auto a2 = catalog_group("Weyl-A2");
  const auto s3 = catalog_group("S3-standard");
  for (const auto& [g, lam] : std::vector<std::pair<GroupRep, ZLattice>>{
           {g4, g4_orbit_lattice(g4)}, {a2, a2_ds_lattice(a2)}, {s3, a2_ds_lattice(s3)}}) {
    const auto d = line_lattice_decomposition(lam, g, choose_generating_reflections(g));
    const std::size_t brute = oracle::brute_force_index(lam, d.sublattice);
    ASSERT_GT(brute, 0u);
    EXPECT_EQ(d.index, brute);
  }
}

TEST(Reflections, RejectsBadInput) {
  const auto b2 = catalog_group("Weyl-B2");
  const auto refs = choose_generating_reflections(b2);
  EXPECT_THROW(line_lattice_decomposition(ZLattice::from_generators({vec({1, 0}), vec({0, 1})}, 2), b2, refs), Error);
  const auto skew = ZLattice::from_generators({vec({1, 0}), vec({kI, 0}), vec({0, 2}), vec({0, kI})}, 2);
  EXPECT_THROW(line_lattice_decomposition(skew, b2, refs), Error);
}

TEST(Cycles, Enumeration) {
  for (std::size_t k : {2u, 3u, 4u})
    for (std::size_t bound : {1u, 2u, 3u, 4u}) {
      std::size_t expected = k;  // length one
      for (std::size_t m = 2; m <= bound; ++m) {
        long walks = 1;
        for (std::size_t t = 0; t < m; ++t) walks *= static_cast<long>(k - 1);
        walks += (m % 2 == 0 ? 1 : -1) * static_cast<long>(k - 1);
        expected += static_cast<std::size_t>(walks);
      }
      EXPECT_EQ(enumerate_cycles(k, bound).size(), expected) << k << " " << bound;
    }
}

TEST(Cycles, B2Value) {
  const auto b2 = catalog_group("Weyl-B2");
  EXPECT_EQ(cycle_multiplier(b2, choose_generating_reflections(b2), {0, 1}), CycNum(2));
}

TEST(Cycles, MatchUnitRootFormula) {
  for (const char* name : {"Weyl-B2", "Weyl-A2", "S3-standard", "S4-standard", "G4"}) {
    const auto g = catalog_group(name);
    const auto refs = choose_generating_reflections(g);
    for (const auto& m : cycle_multipliers(g, refs, g.dimension() + 1))
      EXPECT_EQ(m.value, unit_root_formula(g, refs, m.cycle)) << name;
  }
}

TEST(Cycles, WeylRationalG4NotAndFieldGenerated) {
  for (const char* name : {"Weyl-B2", "Weyl-A2", "S3-standard", "S4-standard"}) {
    const auto g = catalog_group(name);
    for (const auto& m : cycle_multipliers(g, choose_generating_reflections(g), g.dimension() + 1))
      EXPECT_TRUE(m.value.is_rational()) << name;
  }
  const auto g4 = catalog_group("G4");
  const auto field = classify_character_field(g4);
  const auto r = geom_report(g4, g4_orbit_lattice(g4), field);
  EXPECT_TRUE(r.multipliers_generate_character_field);
  bool nonrational_two_cycle = false;
  for (const auto& m : r.multipliers) nonrational_two_cycle |= m.cycle.size() == 2 && !m.value.is_rational();
  EXPECT_TRUE(nonrational_two_cycle);
}

TEST(Cm, G4) {
  const auto g4 = catalog_group("G4");
  const auto r = geom_report(g4, g4_orbit_lattice(g4), classify_character_field(g4));
  ASSERT_TRUE(r.cm.has_value());
  const CycNum c = r.cm->multiplier.value;
  EXPECT_FALSE(c.is_rational());
  const auto& line = r.decomposition.lines[r.cm->multiplier.cycle.front()];
  EXPECT_TRUE(line.lattice.contains(line.lattice.scaled(c)));
  EXPECT_EQ(r.cm->ring.fundamental_discriminant, -3);
  EXPECT_TRUE(r.geom_iii);
}

TEST(Cm, AbsentForWeyl) {
  const auto a2 = catalog_group("Weyl-A2");
  const auto r = geom_report(a2, a2_ds_lattice(a2), classify_character_field(a2));
  EXPECT_FALSE(r.cm.has_value());
  EXPECT_TRUE(r.weyl);
  EXPECT_TRUE(r.geom_i && r.geom_ii);
  EXPECT_FALSE(r.geom_iii);
  // the Z[zeta3]-structure is still visible through the line lattices
  for (const auto& l : r.decomposition.lines) EXPECT_EQ(l.multipliers.fundamental_discriminant, -3);

  const auto b2 = catalog_group("Weyl-B2");
  const auto rb = geom_report(b2, gaussian_square(), classify_character_field(b2));
  EXPECT_FALSE(rb.cm.has_value());
  EXPECT_EQ(rb.decomposition.lines[0].multipliers.discriminant, -4);
}

TEST(Graph, EdgesAndWitnesses) {
  const auto b2 = catalog_group("Weyl-B2");
  const auto db = line_lattice_decomposition(gaussian_square(), b2, choose_generating_reflections(b2));
  const auto gb = isogeny_graph(db, b2);
  EXPECT_TRUE(gb.connected);
  ASSERT_EQ(gb.edges.size(), 2u);
  for (const auto& e : gb.edges) {
    const auto image = db.lines[e.from].lattice.image(detail::id_minus(b2, db.reflections[e.to].element));
    EXPECT_TRUE(db.lines[e.to].lattice.contains(image));
    const std::size_t brute = oracle::brute_force_index(db.lines[e.to].lattice, image);
    ASSERT_GT(brute, 0u);
    EXPECT_EQ(e.index, brute);
  }

  const auto s4 = catalog_group("S4-standard");
  const auto f4 = classify_character_field(s4);
  const auto l4 = extend_rank_2n(construct_rank_n(s4, f4, schur_index(s4, f4).witness), kI);
  const auto d4 = line_lattice_decomposition(l4, s4, choose_generating_reflections(s4));
  const auto g = isogeny_graph(d4, s4);
  EXPECT_TRUE(g.connected);
  // a spanning tree on three nodes, each edge listed in both directions
  EXPECT_GE(g.edges.size(), 4u);
}

TEST(Graph, PairwiseIsogenous) {
  const auto g4 = catalog_group("G4");
  const auto d = line_lattice_decomposition(g4_orbit_lattice(g4), g4, choose_generating_reflections(g4));
  for (const auto& a : d.lines)
    for (const auto& b : d.lines) EXPECT_TRUE(isogeny_test(a.line, b.line).has_value());
}
