// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "torlat/torlat.hpp"

using namespace torlat;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;

  void check(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      failures.push_back(what);
    }
  }
};

const CycNum kI = CycNum::zeta(4);

CycVec vec(std::initializer_list<CycNum> xs) { return CycVec(xs); }

ZLattice gaussian_square() {
  return ZLattice::from_generators({vec({1, 0}), vec({kI, 0}), vec({0, 1}), vec({0, kI})}, 2);
}

/// g(b) in L for every group element and lattice basis vector, by explicit coordinate solves.
bool invariant_by_hand(const ZLattice& l, const GroupRep& g) {
  for (const auto& m : g.elements())
    for (const auto& b : l.basis_vectors())
      if (!l.contains(mat_vec(m, b))) return false;
  return true;
}

/// Hamilton product in (a, b), written out independently of QuatAlgebra.
RatQuat quat_product(const Rational& a, const Rational& b, const RatQuat& p, const RatQuat& q) {
  const auto& x = p.x;
  const auto& y = q.x;
  RatQuat r;
  r.x[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
  r.x[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
  r.x[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
  r.x[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
  return r;
}

bool is_gaussian_integer(const CycNum& x) {
  const CycNum y = x.lift(4);
  return is_integer(y.coeffs()[0]) && is_integer(y.coeffs()[1]);
}

// 1. decision table
Outcome criterion1() {
  Outcome o;
  for (const char* name : {"S3-standard", "S4-standard"}) {
    const auto r = analyze(name);
    const std::size_t n = r.dimension;
    o.check(r.profile.field.kind == FieldKind::Rational && r.verdict.clause == VerdictClause::CI,
            std::string(name) + ": expected clause c-i over Q");
    o.check(r.verdict.exists_rank_n && r.verdict.exists_rank_2n, std::string(name) + ": expected rank n and 2n");
    const auto* zn = r.lattice("Zn");
    const auto* ds = r.lattice("ds");
    o.check(zn && zn->lattice.rank() == n && invariant_by_hand(zn->lattice, close_group(catalog_entry(name).generators)),
            std::string(name) + ": no invariant rank-n lattice");
    o.check(ds && ds->lattice.rank() == 2 * n && ds->lattice.is_discrete(), std::string(name) + ": no rank-2n lattice");
  }
  {
    const auto r = analyze("Q8");
    o.check(r.verdict.clause == VerdictClause::CII && !r.verdict.exists_rank_n && r.verdict.exists_rank_2n,
            "Q8: expected rank 2n only, clause c-ii");
    const auto* l = r.lattice("orbit");
    o.check(l && l->lattice.rank() == 4 && invariant_by_hand(l->lattice, catalog_group("Q8")), "Q8: no rank-4 lattice");
  }
  {
    const auto r = analyze("G4");
    o.check(r.verdict.clause == VerdictClause::CI && r.profile.field.kind == FieldKind::ImaginaryQuadratic &&
                r.profile.field.discriminant == -3,
            "G4: expected clause c-i over Q(sqrt -3)");
    o.check(!r.verdict.exists_rank_n && r.verdict.exists_rank_2n, "G4: expected rank 2n only");
    const auto* l = r.lattice("O");
    o.check(l && l->lattice.rank() == 4 && invariant_by_hand(l->lattice, catalog_group("G4")), "G4: no rank-4 lattice");
  }
  {
    const auto r = analyze("C5-zeta5");
    o.check(!r.verdict.exists_any && r.verdict.clause == VerdictClause::None && r.lattices.empty(),
            "C5: expected no lattice");
  }
  return o;
}

// 2. Q8 on Z[i]^2
Outcome criterion2() {
  Outcome o;
  const auto q8 = catalog_group("Q8");
  const auto lam = gaussian_square();
  o.check(invariance_check(lam, q8), "Z[i]^2 fails invariance_check");
  bool entries_gaussian = true;
  for (const auto& m : q8.elements())
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) entries_gaussian &= is_gaussian_integer(m(a, b));
  o.check(entries_gaussian, "Q8 matrices are not over Z[i]");
  const auto order = ImaginaryQuadraticOrder::from_discriminant(-4);
  const auto split = split_as_order_module(lam, order);
  o.check(split.factors.size() == 2, "expected two factors");
  if (split.factors.size() != 2) return o;
  for (const auto& f : split.factors) {
    const auto ring = multiplier_ring(f);
    o.check(!ring.is_integers && ring.discriminant == -4, "factor multiplier ring is not Z[i]");
    o.check(f.is_stable_under(kI) && !f.is_stable_under((CycNum(1) + kI) / CycNum(2)), "factor ring oracle disagrees");
  }
  o.check(isogeny_test(split.factors[0], split.factors[1]).has_value(), "factors are not isogenous");
  // the O-basis is unimodular: |det|^2 = 1
  const auto& v = split.basis;
  const CycNum det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
  o.check(is_gaussian_integer(det) && det * det.conj() == CycNum(1), "split basis is not a Z[i]-basis");
  o.check(ZLattice::from_generators({v[0], scale(kI, v[0]), v[1], scale(kI, v[1])}, 2) == lam,
          "split basis does not generate Z[i]^2");
  return o;
}

// 3. quaternion torus dichotomy
Outcome criterion3() {
  Outcome o;
  const QuatAlgebra h(-1, -1);
  const auto generic = torus_endomorphisms(build_quat_torus(h, lipschitz_order(), generic_complex_structure()));
  o.check(generic.rank == 4, "generic End rank is " + std::to_string(generic.rank) + ", expected 4");
  o.check(generic.abelian == false, "generic torus not reported non-abelian");
  o.check(generic.left_multipliers.has_value(), "generic End is not given by left multiplications");
  if (generic.left_multipliers && generic.rank == 4) {
    const auto& u = *generic.left_multipliers;
    std::vector<CycVec> gens;
    for (const auto& q : u) gens.push_back(vec({q.x[0], q.x[1], q.x[2], q.x[3]}));
    const ZLattice span = ZLattice::from_generators(gens, 4);
    const ZLattice lip = ZLattice::from_generators(
        {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}, 4);
    o.check(span == lip, "left multipliers do not form a Z-basis of the Lipschitz order");
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        const RatQuat p = quat_product(Rational(-1), Rational(-1), u[a], u[b]);
        RatQuat s;
        for (std::size_t c = 0; c < 4; ++c)
          for (std::size_t t = 0; t < 4; ++t) s.x[t] += Rational(generic.structure[a][b][c]) * u[c].x[t];
        o.check(s.x == p.x, "structure constants differ from the Lipschitz multiplication table");
      }
  }
  const auto rational = torus_endomorphisms(build_quat_torus(h, lipschitz_order(), to_cyc(quat(0, 1, 0, 0))));
  o.check(rational.rank == 8, "c = i End rank is " + std::to_string(rational.rank) + ", expected 8");
  o.check(rational.abelian == true, "c = i torus not reported abelian");
  const auto rg = analyze("example-non-generic");
  const auto ri = analyze("example-non-i");
  o.check(rg.quaternion.ratl && rg.quaternion.ratl->verdict == AbelianVerdict::NotAbelian, "report: generic verdict");
  o.check(ri.quaternion.ratl && ri.quaternion.ratl->verdict == AbelianVerdict::Abelian, "report: c = i verdict");
  return o;
}

// 4. Schur indices from five starts
Outcome criterion4() {
  Outcome o;
  for (const auto& [name, expected] : std::vector<std::pair<std::string, std::size_t>>{{"S3-standard", 1}, {"Q8", 2}, {"G4", 1}}) {
    const auto g = catalog_group(name);
    const auto field = classify_character_field(g);
    const auto starts = schur_start_vectors(g, 5);
    std::set<std::string> distinct;
    for (const auto& s : starts) {
      std::ostringstream k;
      for (const auto& x : s) k << x.to_string() << ";";
      distinct.insert(k.str());
    }
    o.check(starts.size() == 5 && distinct.size() == 5, name + ": starting vectors are not 5 distinct vectors");
    for (const auto& s : starts) {
      const auto res = schur_index(g, field, s);
      o.check(res.index == expected, name + ": m = " + std::to_string(res.index) + " from start " + std::to_string(distinct.size()));
      if (expected != 1) continue;
      o.check(qchi_form_certificate(g, field, res.witness).ok(), name + ": witness fails the Q(chi)-form certificate");
      // G-stable: images stay in the Q-span of the witness
      const Conductor m = g.conductor();
      const std::size_t width = g.dimension() * euler_phi(m);
      RationalSubspaceBasis span(width);
      for (const auto& w : res.witness) span.add(rational_coordinates(w, m));
      bool stable = true;
      for (const auto& e : g.elements())
        for (const auto& w : res.witness) stable &= span.contains(rational_coordinates(mat_vec(e, w), m));
      o.check(stable, name + ": witness is not G-stable");
      CycMatrix cm(0, g.dimension());
      for (const auto& w : res.witness) cm.append_row(std::span<const CycNum>(w));
      o.check(rank(cm) == g.dimension(), name + ": C-span of the witness is not V");
    }
  }
  return o;
}

// 5. reflection pipeline
Outcome criterion5() {
  Outcome o;
  const auto b2 = catalog_group("Weyl-B2");
  const auto g4 = catalog_group("G4");
  const auto g4_field = classify_character_field(g4);
  const ZLattice g4_lattice = orbit_lattice_over_order(g4, g4_field, ImaginaryQuadraticOrder::from_discriminant(-3), vec({1, 0}));
  for (const auto& [name, g, lam] : std::vector<std::tuple<std::string, GroupRep, ZLattice>>{
           {"B2", b2, gaussian_square()}, {"G4", g4, g4_lattice}}) {
    const auto field = classify_character_field(g);
    const auto r = geom_report(g, lam, field);
    const auto& d = r.decomposition;
    CycMatrix roots(0, g.dimension());
    for (const auto& x : d.reflections) roots.append_row(std::span<const CycNum>(x.root));
    o.check(d.direct_sum && rank(roots) == g.dimension(), name + ": V is not the direct sum of the root lines");
    const std::size_t brute = oracle::brute_force_index(lam, d.sublattice);
    o.check(brute > 0 && d.index == static_cast<unsigned long>(brute),
            name + ": index " + d.index.get_str() + " vs coset count " + std::to_string(brute));
    o.check(!d.s_determinant.is_zero(), name + ": s is degenerate");
    o.check(r.graph.connected, name + ": isogeny graph disconnected");
    if (name == "G4") {
      o.check(r.cm.has_value(), "G4: no CM multiplier");
      if (r.cm) {
        const CycNum c = r.cm->multiplier.value;
        const auto& line = d.lines[r.cm->multiplier.cycle.front()].lattice;
        bool inside = !c.is_rational();
        for (const auto& b : line.basis_vectors()) inside &= line.contains(scale(c, b));
        o.check(inside, "G4: c Lambda_1 is not inside Lambda_1");
        o.check(r.cm->ring.fundamental_discriminant == -3, "G4: multiplier ring not in Q(sqrt -3)");
      }
    } else {
      bool rational = true;
      for (const auto& m : r.multipliers) rational &= m.value.is_rational();
      o.check(rational && !r.multipliers.empty(), "B2: non-rational cycle multiplier");
    }
  }
  for (const char* name : {"Weyl-A2", "S4-standard"}) {
    const auto g = catalog_group(name);
    const auto refs = choose_generating_reflections(g);
    bool rational = true;
    for (const auto& m : cycle_multipliers(g, refs, g.dimension() + 1)) rational &= m.value.is_rational();
    o.check(rational, std::string(name) + ": non-rational cycle multiplier");
  }
  return o;
}

// 6. subfield search
Outcome criterion6() {
  Outcome o;
  const QuatAlgebra h1(-1, -1);
  const auto w1 = imaginary_quadratic_subfield(h1, 3);
  o.check(w1 && w1->t == -1, "(-1,-1): expected t = -1");
  if (w1) o.check(quat_product(-1, -1, w1->x, w1->x).x == RatQuat{{w1->t, 0, 0, 0}}.x, "(-1,-1): x^2 != t");
  const QuatAlgebra h2(-1, -3);
  const auto w2 = imaginary_quadratic_subfield(h2, 3);
  o.check(w2 && (w2->t == -1 || w2->t == -3), "(-1,-3): expected t in {-1, -3}");
  if (w2) o.check(quat_product(-1, -3, w2->x, w2->x).x == RatQuat{{w2->t, 0, 0, 0}}.x, "(-1,-3): x^2 != t");
  return o;
}

ZLattice random_full_lattice(std::mt19937_64& rng) {
  const CycNum w = CycNum::zeta(3);
  std::vector<CycVec> gens{vec({1, 0}), vec({w, 0}), vec({0, 1}), vec({0, w})};
  for (auto& g : gens) {
    g[0] += CycNum(make_rational(static_cast<long>(rng() % 3), 2));
    g[1] += CycNum(make_rational(static_cast<long>(rng() % 3), 3));
  }
  return ZLattice::from_generators(gens);
}

ZLattice random_sublattice(const ZLattice& a, std::mt19937_64& rng) {
  const auto basis = a.basis_vectors();
  std::vector<CycVec> gens;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CycVec v(a.dimension(), CycNum(0));
    for (std::size_t j = i; j < basis.size(); ++j) {
      const long c = i == j ? static_cast<long>(rng() % 2) + 1 : static_cast<long>(rng() % 3) - 1;
      v = add(v, scale(CycNum(c), basis[j]));
    }
    gens.push_back(v);
  }
  return ZLattice::from_generators(gens, a.dimension(), a.conductor());
}

// 7. property suites
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const ZLattice a = random_full_lattice(rng);
    const ZLattice b = random_sublattice(a, rng);
    const ZLattice c = random_sublattice(b, rng);
    const auto ab = lattice_index(a, b), bc = lattice_index(b, c), ac = lattice_index(a, c);
    o.check(ab && bc && ac && *ac == *ab * *bc, "index multiplicativity fails in trial " + std::to_string(t));
    const std::size_t brute = oracle::brute_force_index(a, b);
    if (brute) o.check(ab && *ab == static_cast<unsigned long>(brute), "index disagrees with coset count");
  }
  for (int t = 0; t < 200; ++t) {
    const Conductor n = t % 2 == 0 ? 4 : 3;
    std::vector<CycVec> gens;
    const std::size_t count = 2 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      CycVec v;
      for (int j = 0; j < 2; ++j)
        v.push_back(CycNum(make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3))) +
                    CycNum(static_cast<long>(rng() % 5) - 2) * CycNum::zeta(n));
      gens.push_back(v);
    }
    bool zero = true;
    for (const auto& g : gens) zero = zero && is_zero_vector(g);
    if (zero) continue;
    const auto l = lattice_from_generators(gens);
    o.check(hermite_normal_form(l.hnf()) == l.hnf(), "HNF is not idempotent");
    o.check(lattice_from_generators(l.basis_vectors()) == l, "re-spanning the HNF basis changes the lattice");
    for (const auto& g : gens) o.check(l.contains(g), "generator not in its own span");
    for (const auto& b : l.basis_vectors()) {
      // every basis vector lies in the Q-span of the generators
      RatMatrix m(0, l.rational_rows().cols());
      for (const auto& g : gens) {
        const RatVec c = rational_coordinates(g, l.conductor());
        m.append_row(std::span<const Rational>(c));
      }
      const RatVec target = rational_coordinates(b, l.conductor());
      const auto x = solve(m.transpose(), std::span<const Rational>(target));
      o.check(x.has_value(), "HNF basis vector outside the Q-span of the generators");
    }
  }
  const std::vector<CycNum> omegas{kI, CycNum::zeta(3), sqrt_integer(-2), CycNum::zeta(5), CycNum::zeta(12)};
  for (int t = 0; t < 100; ++t) {
    const CycNum& om = omegas[rng() % omegas.size()];
    const CycNum tau = (CycNum(static_cast<long>(rng() % 7) - 3) + CycNum(static_cast<long>(rng() % 3) + 1) * om) *
                       CycNum(make_rational(1, static_cast<long>(rng() % 3) + 1));
    const CycNum g1 = CycNum(1) + CycNum(static_cast<long>(rng() % 3)) * om;
    const RankTwoLattice gamma(g1, g1 * tau);
    const auto ring = multiplier_ring(gamma);
    // box search over x + y tau, |x| <= 6, 1 <= y <= 12: the smallest y is the ring generator's
    std::optional<long> smallest;
    for (long y = 1; y <= 12 && !smallest; ++y)
      if (gamma.is_stable_under(CycNum(y) * tau)) smallest = y;
    if (ring.is_integers) {
      o.check(!smallest, "multiplier ring Z but the box search found a multiplier");
      continue;
    }
    o.check(smallest && ring.generator == CycNum(*smallest) * tau, "multiplier ring generator disagrees with box search");
    o.check(gamma.is_stable_under(ring.generator) && ring.contains(ring.generator * ring.generator),
            "multiplier ring not closed");
  }
  for (const auto& e : catalog()) {
    const auto g = close_group(e.generators);
    CycNum sum;
    for (const auto& m : g.elements()) {
      const CycNum tr = trace(m);
      sum += tr * tr.conj();
    }
    o.check(sum.is_rational(), e.name + ": character norm not rational");
    if (sum.is_rational()) {
      const Rational norm = sum.rational_value() / Rational(static_cast<long>(g.order()));
      o.check(is_integer(norm) && norm == 1, e.name + ": character norm " + norm.get_str());
    }
    const auto h = invariant_hermitian(g);
    for (const auto& m : g.elements()) o.check(adjoint(m) * h.gram * m == h.gram, e.name + ": Hermitian form not invariant");
  }
  return o;
}

// 8. A2 root lattice with zeta3
Outcome criterion8() {
  Outcome o;
  const auto a2 = catalog_group("Weyl-A2");
  const ZLattice root = ZLattice::from_generators({vec({1, 0}), vec({0, 1})}, 2);
  o.check(invariance_check(root, a2), "A2 root lattice not invariant");
  const ZLattice lam = extend_rank_2n(root, CycNum::zeta(3));
  o.check(lam.rank() == 4 && invariant_by_hand(lam, a2), "Lambda + zeta3 Lambda is not an invariant rank-4 lattice");
  const auto r = geom_report(a2, lam, classify_character_field(a2));
  o.check(r.geom_i && r.geom_ii, "geom (i)-(ii) not certified");
  o.check(!r.graph.edges.empty(), "no isogeny edges");
  const auto& d = r.decomposition;
  for (const auto& e : r.graph.edges) {
    const CycMatrix p = detail::id_minus(a2, d.reflections[e.to].element);
    bool into = true;
    for (const auto& b : d.lines[e.from].lattice.basis_vectors()) into &= d.lines[e.to].lattice.contains(mat_vec(p, b));
    o.check(into, "(id - r_k) does not map Lambda_j into Lambda_k");
    const ZLattice image = d.lines[e.from].lattice.image(p);
    const std::size_t brute = oracle::brute_force_index(d.lines[e.to].lattice, image);
    o.check(brute > 0 && e.index == static_cast<unsigned long>(brute), "edge index disagrees with coset count");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
      {1, "decision table on the catalog", 10.0, criterion1},
      {2, "Q8 on Z[i]^2 splits as a square of C/Z[i]", 1.0, criterion2},
      {3, "quaternion torus dichotomy (ranks 4 and 8)", 5.0, criterion3},
      {4, "Schur indices from five starting vectors", 10.0, criterion4},
      {5, "reflection pipeline for B2 and G4", 30.0, criterion5},
      {6, "imaginary quadratic subfield search", 1e9, criterion6},
      {7, "seeded property suites", 1e9, criterion7},
      {8, "A2 root lattice extended by zeta3", 1e9, criterion8},
  };
  int failed = 0;
  for (const auto& [id, title, budget, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget) out.check(false, "took " + std::to_string(secs) + " s, budget " + std::to_string(budget) + " s");
    std::cout << "criterion " << id << ": " << (out.ok ? "PASS" : "FAIL") << "  " << title << "  (" << std::fixed
              << std::setprecision(3) << secs << " s)";
    if (!out.ok) std::cout << "  " << out.failures.front() << (out.failures.size() > 1 ? " ..." : "");
    std::cout << "\n";
    failed += out.ok ? 0 : 1;
  }
  return failed;
}
