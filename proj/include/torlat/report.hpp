#pragma once

// End-to-end analysis: close -> irreducibility -> profile -> verdict ->
// construct -> decompose -> report.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "torlat/catalog.hpp"
#include "torlat/forge.hpp"
#include "torlat/json_io.hpp"
#include "torlat/quaternion.hpp"
#include "torlat/reflection_tori.hpp"
#include "torlat/schur.hpp"

namespace torlat {

inline constexpr const char* kReportSchema = "torus-report/1";

enum class Recipe { Zn, ds, O };

inline std::string to_string(Recipe r) {
  switch (r) {
    case Recipe::Zn: return "Zn";
    case Recipe::ds: return "ds";
    case Recipe::O: return "O";
  }
  return "";
}

inline Recipe parse_recipe(const std::string& s) {
  if (s == "Zn") return Recipe::Zn;
  if (s == "ds") return Recipe::ds;
  if (s == "O") return Recipe::O;
  fail(ErrorKind::InvalidInput, "unknown recipe '" + s + "' (expected Zn, ds or O)");
}

struct AnalyzeOptions {
  std::optional<Recipe> recipe;  // restrict construction to one recipe
  std::optional<CycNum> c;       // scalar for the ds recipe, default i
  std::optional<std::size_t> cycle_bound;
  std::uint64_t seed = SchurOptions{}.seed;
  std::size_t cap = kDefaultGroupCap;
};

struct AnalysisInput {
  std::string name = "input";
  std::string source = "user input";
  std::vector<CycMatrix> generators;
  QuaternionPreset quaternion = QuaternionPreset::None;
};

inline AnalysisInput input_from_catalog(const std::string& name) {
  const CatalogEntry e = catalog_entry(name);
  return {e.name, e.source, e.generators, e.quaternion};
}

inline AnalysisInput input_from_json(const Json& j) {
  GroupInput g = group_from_json(j);
  return {g.name, "user input", std::move(g.generators), QuaternionPreset::None};
}

struct ConstructedLattice {
  std::string recipe;  // Zn, ds, O, orbit, saturate, split
  ZLattice lattice;
  bool invariant = false;
  std::optional<CycNum> c;
};

struct OrderStructure {
  std::string lattice_recipe;
  ImaginaryQuadraticOrder order;
  Saturation saturation;
  std::optional<OrderSplitting> splitting;
  std::vector<MultiplierRing> rings;
  bool factors_isogenous = false;
  std::string note;
};

struct QuaternionAnalysis {
  std::optional<QuaternionStructure> algebra;
  std::optional<SubfieldWitness> subfield;
  std::optional<QuatTorus> torus;
  std::optional<EndomorphismRing> endomorphisms;
  std::optional<RatLVerdict> ratl;
};

struct TheoremTag {
  std::string tag;  // main2, nonrationalT, ratL, geom, deform
  bool certified = false;
  std::string conclusion;
  Json witness;
};

struct TorusReport {
  std::string name;
  std::string source;
  std::size_t order = 0;
  std::size_t dimension = 0;
  Conductor conductor = 1;
  Rational character_norm;
  CharacterProfile profile;
  LatticeVerdict verdict;
  std::vector<ConstructedLattice> lattices;
  std::vector<OrderStructure> order_structures;
  std::optional<GeomReport> geom;
  std::string geom_skipped;
  QuaternionAnalysis quaternion;
  std::vector<TheoremTag> theorems;
  std::string structure;

  const ConstructedLattice* lattice(const std::string& recipe) const {
    for (const auto& l : lattices)
      if (l.recipe == recipe) return &l;
    return nullptr;
  }
  const TheoremTag* theorem(const std::string& tag) const {
    for (const auto& t : theorems)
      if (t.tag == tag) return &t;
    return nullptr;
  }
};

namespace detail {

/// O = Z[c] when c is a quadratic algebraic integer with negative discriminant.
inline std::optional<ImaginaryQuadraticOrder> order_generated_by(const CycNum& c) {
  const auto poly = minimal_polynomial(c);
  if (poly.size() != 3 || !is_integer(poly[0]) || !is_integer(poly[1])) return std::nullopt;
  const Rational d = poly[1] * poly[1] - 4 * poly[0];
  if (sgn(d) >= 0) return std::nullopt;
  return ImaginaryQuadraticOrder::from_discriminant(d.get_num().get_si());
}

inline OrderStructure order_structure(const std::string& recipe, const ZLattice& lattice,
                                      const ImaginaryQuadraticOrder& order) {
  OrderStructure s{recipe, order, order_saturate(lattice, order), std::nullopt, {}, false, ""};
  if (!order.euclidean()) {
    s.note = "order is not Euclidean; splitting skipped";
    return s;
  }
  s.splitting = split_as_order_module(s.saturation.lattice, order);
  for (const auto& f : s.splitting->factors) s.rings.push_back(multiplier_ring(f));
  s.factors_isogenous = true;
  for (std::size_t k = 1; k < s.splitting->factors.size(); ++k)
    s.factors_isogenous &= isogeny_test(s.splitting->factors[0], s.splitting->factors[k]).has_value();
  return s;
}

inline bool split_is_cm_power(const OrderStructure& s) {
  if (!s.splitting || s.saturation.index != 1) return false;
  for (const auto& r : s.rings)
    if (r.is_integers || r.discriminant != s.order.discriminant()) return false;
  return s.factors_isogenous;
}

inline std::vector<CycVec> standard_basis(std::size_t n) {
  std::vector<CycVec> out;
  for (std::size_t k = 0; k < n; ++k) {
    CycVec v(n, CycNum(0));
    v[k] = CycNum(1);
    out.push_back(v);
  }
  return out;
}

inline constexpr long kCmSearchDiscriminants[] = {-4, -3, -8, -7, -11};

/// An invariant O-stable lattice sum_g Z g(v) + Z g(omega v) of rank 2n, for small Euclidean O.
inline std::optional<std::pair<ZLattice, ImaginaryQuadraticOrder>> cm_structure_search(
    const GroupRep& g, const std::vector<CycVec>& candidates) {
  for (long d : kCmSearchDiscriminants) {
    const auto order = ImaginaryQuadraticOrder::from_discriminant(d);
    for (const auto& v : candidates) {
      const CycVec w = scale(order.omega(), v);
      std::vector<CycVec> gens;
      for (const auto& m : g.elements()) {
        gens.push_back(mat_vec(m, v));
        gens.push_back(mat_vec(m, w));
      }
      const Conductor cond = std::lcm(g.conductor(), order.omega().conductor());
      RatMatrix rows(0, g.dimension() * euler_phi(cond));
      for (const auto& x : gens) {
        const RatVec r = rational_coordinates(x, cond);
        rows.append_row(std::span<const Rational>(r));
      }
      if (rank(rows) != 2 * g.dimension()) continue;
      const ZLattice l = ZLattice::from_generators(gens, g.dimension(), cond);
      if (l.is_discrete() && is_order_stable(l, order) && invariance_check(l, g)) return std::make_pair(l, order);
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline TorusReport analyze(const AnalysisInput& input, const AnalyzeOptions& options = {}) {
  require(!input.generators.empty(), ErrorKind::InvalidInput, "no generators");
  TorusReport r;
  r.name = input.name;
  r.source = input.source;
  const GroupRep g = close_group(input.generators, options.cap);
  r.order = g.order();
  r.dimension = g.dimension();
  r.conductor = g.conductor();
  const std::size_t n = g.dimension();

  const auto irr = irreducibility_check(g);
  r.character_norm = irr.norm;
  require(irr.irreducible, ErrorKind::InvalidInput,
          "reducible input: <chi, chi> = " + irr.norm.get_str() + " (irreducible needs 1)");

  SchurOptions so;
  so.seed = options.seed;
  r.profile = character_profile(g, so);
  r.verdict = lattice_existence_verdict(r.profile);
  const FieldClass& field = r.profile.field;
  const std::size_t m = r.profile.schur.index;

  auto wants = [&](Recipe k) { return !options.recipe || *options.recipe == k; };
  auto reject_recipe = [&](const std::string& why) {
    if (options.recipe) fail(ErrorKind::InvalidInput, "recipe " + to_string(*options.recipe) + " unavailable: " + why);
  };

  const ZLattice* geom_lattice = nullptr;
  std::string main2_conclusion;
  Json main2_witness = Json::object();

  if (r.verdict.clause == VerdictClause::CI && field.kind == FieldKind::Rational) {
    if (options.recipe == Recipe::O) reject_recipe("the character field is Q");
    const ZLattice zn = construct_rank_n(g, field, r.profile.schur.witness);
    r.lattices.push_back({"Zn", zn, invariance_check(zn, g), std::nullopt});
    if (wants(Recipe::ds)) {
      const CycNum c = options.c.value_or(CycNum::zeta(4));
      const ZLattice ds = extend_rank_2n(zn, c);
      r.lattices.push_back({"ds", ds, invariance_check(ds, g), c});
      if (const auto order = detail::order_generated_by(c)) {
        r.order_structures.push_back(detail::order_structure("ds", ds, *order));
        const auto& os = r.order_structures.back();
        if (os.splitting) {
          r.lattices.push_back({"split", os.saturation.lattice, invariance_check(os.saturation.lattice, g), std::nullopt});
        }
      }
    }
    main2_conclusion = "invariant lattices of rank n and 2n exist";
    main2_witness["rank_n"] = "Zn";
    main2_witness["qform_certificate"] = qchi_form_certificate(g, field, r.profile.schur.witness).ok();
  } else if (r.verdict.clause == VerdictClause::CI) {
    if (options.recipe && *options.recipe != Recipe::O) reject_recipe("no rank-n lattice for a non-rational character");
    const auto order = ImaginaryQuadraticOrder::from_discriminant(field.discriminant.get_si());
    const ZLattice lo = orbit_lattice_over_order(g, field, order, r.profile.schur.witness.front());
    r.lattices.push_back({"O", lo, invariance_check(lo, g), order.omega()});
    r.order_structures.push_back(detail::order_structure("O", lo, order));
    const auto& os = r.order_structures.back();
    if (os.saturation.index != 1)
      r.lattices.push_back({"saturate", os.saturation.lattice, invariance_check(os.saturation.lattice, g), std::nullopt});
    if (os.splitting)
      r.lattices.push_back({"split", os.saturation.lattice, invariance_check(os.saturation.lattice, g), std::nullopt});
    main2_conclusion = "invariant lattices of rank 2n only";
    main2_witness["rank_2n"] = "O";
    main2_witness["field_discriminant"] = field.discriminant.get_str();
  } else if (r.verdict.clause == VerdictClause::CII) {
    reject_recipe("Schur index 2: only the orbit of a Q-form of the simple module");
    const ZLattice lq = orbit_lattice(g, r.profile.schur.witness);
    require(lq.rank() == 2 * n, ErrorKind::InternalConsistency, "Schur index 2 orbit lattice does not have rank 2n");
    r.lattices.push_back({"orbit", lq, invariance_check(lq, g), std::nullopt});
    std::vector<CycVec> candidates = detail::standard_basis(n);
    for (const auto& w : r.profile.schur.witness) candidates.push_back(w);
    if (const auto cm = detail::cm_structure_search(g, candidates)) {
      r.order_structures.push_back(detail::order_structure("orbit-cm", cm->first, cm->second));
      r.lattices.push_back({"split", cm->first, invariance_check(cm->first, g), cm->second.omega()});
    }
  } else {
    reject_recipe("no nonzero invariant lattice");
  }

  for (const auto& l : r.lattices)
    require(l.invariant, ErrorKind::InternalConsistency, "constructed lattice '" + l.recipe + "' is not invariant");

  // reflection groups
  if (!find_reflections(g).empty()) {
    for (const char* rec : {"ds", "O", "split"})
      if (const auto* l = r.lattice(rec); l && !geom_lattice && l->lattice.rank() == 2 * n) geom_lattice = &l->lattice;
    if (geom_lattice) {
      try {
        r.geom = geom_report(g, *geom_lattice, field, options.cycle_bound);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidInput && e.kind() != ErrorKind::OutOfScope) throw;
        r.geom_skipped = e.what();
      }
    } else {
      r.geom_skipped = "no rank-2n lattice";
    }
  } else {
    r.geom_skipped = "no reflections";
  }

  // quaternion analysis for Schur index 2
  std::optional<TorusEvidence> evidence;
  if (m == 2 && field.kind == FieldKind::Rational) {
    r.quaternion.algebra = quaternion_algebra_of(g);
    if (r.quaternion.algebra) r.quaternion.subfield = imaginary_quadratic_subfield(r.quaternion.algebra->algebra, 3);
    if (input.quaternion != QuaternionPreset::None) {
      const CycQuat c = input.quaternion == QuaternionPreset::Generic ? generic_complex_structure()
                                                                       : to_cyc(quat(0, 1, 0, 0));
      r.quaternion.torus = build_quat_torus(QuatAlgebra(-1, -1), lipschitz_order(), c);
      r.quaternion.endomorphisms = torus_endomorphisms(*r.quaternion.torus);
      const auto& e = *r.quaternion.endomorphisms;
      require(e.abelian.has_value(), ErrorKind::InternalConsistency, "quaternion torus endomorphism ring not recognized");
      evidence = TorusEvidence{*e.abelian, "H/Lipschitz torus, endomorphism ring " + to_string(e.tag) + " of rank " +
                                               std::to_string(e.rank)};
    } else {
      for (const auto& os : r.order_structures)
        if (detail::split_is_cm_power(os))
          evidence = TorusEvidence{true, "invariant lattice is O-stable and splits as a power of C/O, O of discriminant " +
                                             std::to_string(os.order.discriminant())};
    }
    r.quaternion.ratl = ratL_verdict(r.profile, n, evidence);
  }

  // theorem tags
  const OrderStructure* os0 = r.order_structures.empty() ? nullptr : &r.order_structures.front();
  auto split_json = [](const OrderStructure& os) {
    Json j{{"lattice", os.lattice_recipe},
           {"order_discriminant", os.order.discriminant()},
           {"saturation_index", os.saturation.index.get_str()},
           {"factors", os.splitting ? os.splitting->factors.size() : 0},
           {"factor_discriminants", Json::array()},
           {"factors_isogenous", os.factors_isogenous}};
    for (const auto& ring : os.rings) j["factor_discriminants"].push_back(ring.discriminant.get_str());
    return j;
  };
  if (r.verdict.clause == VerdictClause::CI) {
    TheoremTag t{"main2", true, main2_conclusion, main2_witness};
    if (os0 && detail::split_is_cm_power(*os0)) {
      t.conclusion += "; V/Lambda is isomorphic to (C/O)^n with O of discriminant " +
                      std::to_string(os0->order.discriminant());
      t.witness["split"] = split_json(*os0);
    }
    r.theorems.push_back(t);
  }
  if (field.kind == FieldKind::ImaginaryQuadratic && r.verdict.exists_any && os0) {
    TheoremTag t{"nonrationalT", os0->saturation.lattice.rank() == 2 * n,
                 "Q(chi) imaginary quadratic of discriminant " + field.discriminant.get_str() +
                     "; invariant lattices have rank 2n",
                 split_json(*os0)};
    if (detail::split_is_cm_power(*os0)) t.conclusion += "; V/Lambda is a product of elliptic curves with CM";
    t.witness["rank"] = os0->saturation.lattice.rank();
    r.theorems.push_back(t);
  }
  if (r.quaternion.ratl) {
    const auto& v = *r.quaternion.ratl;
    Json w{{"branch", to_string(v.branch)}, {"h_definite", v.h_definite}, {"justification", v.justification}};
    if (r.quaternion.algebra) {
      w["algebra"] = {{"a", to_json(r.quaternion.algebra->algebra.a())},
                      {"b", to_json(r.quaternion.algebra->algebra.b())},
                      {"definite", r.quaternion.algebra->algebra.definite()}};
    }
    const bool definite_ok = !r.quaternion.algebra || r.quaternion.algebra->algebra.definite() == v.h_definite;
    r.theorems.push_back({"ratL", definite_ok, to_string(v.verdict), w});
  }
  if (r.geom) {
    const auto& gr = *r.geom;
    std::string c = "V/Lambda^0 is a product of mutually isogenous elliptic curves; V/Lambda is isogenous to a power of one";
    if (gr.geom_iii) c += "; that curve has CM";
    Json w{{"index", gr.decomposition.index.get_str()},
           {"direct_sum", gr.decomposition.direct_sum},
           {"graph_connected", gr.graph.connected},
           {"edges", gr.graph.edges.size()},
           {"weyl", gr.weyl}};
    if (gr.cm) w["cm_cycle"] = gr.cm->multiplier.cycle;
    r.theorems.push_back({"geom", gr.geom_i && gr.geom_ii && (gr.weyl || gr.geom_iii), c, w});
  }
  if (field.kind == FieldKind::Rational && m == 1 && os0) {
    r.theorems.push_back({"deform", detail::split_is_cm_power(*os0),
                          "Lambda + omega Lambda gives (C/O)^n with O of discriminant " +
                              std::to_string(os0->order.discriminant()),
                          split_json(*os0)});
  } else if (field.kind == FieldKind::Rational && m == 2 && r.quaternion.algebra) {
    Json w = Json::object();
    if (r.quaternion.subfield) {
      const auto& s = *r.quaternion.subfield;
      Json x = Json::array();
      for (const auto& q : s.x.x) x.push_back(to_json(q));
      w = {{"x", x}, {"t", to_json(s.t)}, {"discriminant", s.discriminant.get_str()}};
    }
    r.theorems.push_back({"deform", r.quaternion.subfield.has_value(),
                          "H = " + r.quaternion.algebra->algebra.describe() + " contains an imaginary quadratic field",
                          w});
  }

  // structure summary
  if (!r.verdict.exists_any) {
    r.structure = "no nonzero invariant lattice";
  } else if (r.quaternion.ratl) {
    r.structure = "rank-2n lattices only";
    if (r.quaternion.torus)
      r.structure += "; H/Lipschitz lattice: " + to_string(r.quaternion.ratl->verdict);
    if (os0 && detail::split_is_cm_power(*os0))
      r.structure += "; CM lattice: abelian, (C/O)^" + std::to_string(n) + " with O of discriminant " +
                     std::to_string(os0->order.discriminant());
    if (!r.quaternion.torus && !(os0 && detail::split_is_cm_power(*os0)))
      r.structure += "; " + to_string(r.quaternion.ratl->verdict);
  } else if (os0 && detail::split_is_cm_power(*os0)) {
    r.structure = std::string(r.verdict.exists_rank_n ? "rank-n and rank-2n lattices" : "rank-2n lattices only") +
                  "; (C/O)^" + std::to_string(n) + " with O of discriminant " + std::to_string(os0->order.discriminant());
  } else {
    r.structure = r.verdict.exists_rank_n ? "rank-n and rank-2n lattices" : "rank-2n lattices only";
  }
  return r;
}

inline TorusReport analyze(const std::string& catalog_name, const AnalyzeOptions& options = {}) {
  return analyze(input_from_catalog(catalog_name), options);
}

// ---------------------------------------------------------------- JSON

inline Json to_json(const MultiplierRing& ring) {
  Json j{{"is_integers", ring.is_integers}};
  if (!ring.is_integers) {
    j["discriminant"] = ring.discriminant.get_str();
    j["conductor"] = ring.conductor.get_str();
    j["fundamental_discriminant"] = ring.fundamental_discriminant.get_str();
    j["generator"] = to_json(ring.generator);
  }
  return j;
}

inline Json to_json(const RankTwoLattice& l) { return Json{{"gamma1", to_json(l.gamma1())}, {"gamma2", to_json(l.gamma2())}}; }

inline Json to_json(const RatQuat& q) {
  Json j = Json::array();
  for (const auto& x : q.x) j.push_back(to_json(x));
  return j;
}

inline Json to_json(const CycQuat& q) {
  Json j = Json::array();
  for (const auto& x : q.x) j.push_back(to_json(x));
  return j;
}

inline Json to_json(const GeomReport& gr) {
  const auto& d = gr.decomposition;
  Json refs = Json::array();
  for (const auto& x : d.reflections)
    refs.push_back({{"element", x.element}, {"root", to_json(x.root)}, {"theta", to_json(x.theta)}});
  Json lines = Json::array();
  for (const auto& l : d.lines)
    lines.push_back({{"lattice", to_json(l.lattice)}, {"line", to_json(l.line)}, {"multiplier_ring", to_json(l.multipliers)}});
  Json mults = Json::array();
  for (const auto& c : gr.multipliers) mults.push_back({{"cycle", c.cycle}, {"value", to_json(c.value)}});
  Json edges = Json::array();
  for (const auto& e : gr.graph.edges)
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"inner", to_json(e.inner)},
                     {"index", e.index.get_str()},
                     {"isogeny", {{"c", to_json(e.scalar.c)}, {"k", e.scalar.k.get_str()}, {"degree", e.scalar.degree.get_str()}}}});
  Json j{{"reflections", refs},
         {"lines", lines},
         {"sublattice", to_json(d.sublattice)},
         {"index", d.index.get_str()},
         {"s_determinant", to_json(d.s_determinant)},
         {"direct_sum", d.direct_sum},
         {"projections_ok", d.projections_ok},
         {"cycle_bound", gr.cycle_bound},
         {"multipliers", mults},
         {"multipliers_generate_character_field", gr.multipliers_generate_character_field},
         {"cm", nullptr},
         {"graph", {{"edges", edges}, {"connected", gr.graph.connected}}},
         {"verdict", {{"weyl", gr.weyl}, {"geom_i", gr.geom_i}, {"geom_ii", gr.geom_ii}, {"geom_iii", gr.geom_iii}}}};
  if (gr.cm)
    j["cm"] = {{"cycle", gr.cm->multiplier.cycle}, {"value", to_json(gr.cm->multiplier.value)}, {"ring", to_json(gr.cm->ring)}};
  return j;
}

inline Json to_json(const TorusReport& r) {
  const auto& p = r.profile;
  Json field{{"kind", to_string(p.field.kind)}, {"degree", p.field.degree}, {"real", p.field.real}};
  if (p.field.kind == FieldKind::ImaginaryQuadratic) {
    field["discriminant"] = p.field.discriminant.get_str();
    field["generator"] = to_json(p.field.generator);
  }
  Json bil{{"type", to_string(p.bilinear.type)}, {"indicator", to_json(p.bilinear.indicator)}};
  if (p.bilinear.form) bil["form"] = to_json(p.bilinear.form->gram);
  Json witness = Json::array();
  for (const auto& w : p.schur.witness) witness.push_back(to_json(w));
  Json schur{{"index", p.schur.index},
             {"module_dimension", p.schur.module_dimension},
             {"field_degree", p.schur.field_degree},
             {"stable_passes", p.schur.stable_passes},
             {"start", to_json(p.schur.start)},
             {"witness", witness}};

  Json lattices = Json::array();
  for (const auto& l : r.lattices) {
    Json j{{"recipe", l.recipe}, {"rank", l.lattice.rank()}, {"invariant", l.invariant}, {"lattice", to_json(l.lattice)}};
    if (l.c) j["c"] = to_json(*l.c);
    lattices.push_back(j);
  }
  Json orders = Json::array();
  for (const auto& os : r.order_structures) {
    Json j{{"lattice", os.lattice_recipe},
           {"order", {{"discriminant", os.order.discriminant()}, {"omega", to_json(os.order.omega())}, {"euclidean", os.order.euclidean()}}},
           {"saturation_index", os.saturation.index.get_str()},
           {"split", nullptr}};
    if (os.splitting) {
      Json basis = Json::array();
      for (const auto& v : os.splitting->basis) basis.push_back(to_json(v));
      Json factors = Json::array();
      for (std::size_t k = 0; k < os.splitting->factors.size(); ++k)
        factors.push_back({{"lattice", to_json(os.splitting->factors[k])}, {"multiplier_ring", to_json(os.rings[k])}});
      j["split"] = {{"basis", basis}, {"factors", factors}, {"factors_isogenous", os.factors_isogenous}};
    }
    if (!os.note.empty()) j["note"] = os.note;
    orders.push_back(j);
  }

  Json quat = nullptr;
  if (r.quaternion.algebra || r.quaternion.torus || r.quaternion.ratl) {
    quat = Json::object();
    if (r.quaternion.algebra) {
      const auto& a = r.quaternion.algebra->algebra;
      quat["algebra"] = {{"a", to_json(a.a())}, {"b", to_json(a.b())}, {"definite", a.definite()},
                         {"x", to_json(r.quaternion.algebra->x)}, {"y", to_json(r.quaternion.algebra->y)}};
    }
    if (r.quaternion.subfield) {
      const auto& s = *r.quaternion.subfield;
      quat["subfield"] = {{"x", to_json(s.x)}, {"t", to_json(s.t)}, {"discriminant", s.discriminant.get_str()}};
    }
    if (r.quaternion.torus) {
      const auto& t = *r.quaternion.torus;
      Json order = Json::array();
      for (const auto& q : t.order) order.push_back(to_json(q));
      Json tj{{"algebra", {{"a", to_json(t.algebra.a())}, {"b", to_json(t.algebra.b())}, {"definite", t.algebra.definite()}}},
              {"order", order},
              {"lattice", to_json(t.lattice)},
              {"c", to_json(t.c)},
              {"J", to_json(t.j)},
              {"rational_direction", t.rational_direction}};
      if (t.direction) tj["direction"] = to_json(*t.direction);
      if (t.field_discriminant) tj["field_discriminant"] = t.field_discriminant->get_str();
      quat["torus"] = tj;
    }
    if (r.quaternion.endomorphisms) {
      const auto& e = *r.quaternion.endomorphisms;
      Json basis = Json::array();
      for (const auto& b : e.basis) basis.push_back(to_json(b));
      Json ej{{"rank", e.rank},
              {"basis", basis},
              {"contains_identity", e.contains_identity},
              {"closed", e.closed},
              {"center_dimension", e.center_dimension},
              {"tag", to_string(e.tag)},
              {"abelian", e.abelian ? Json(*e.abelian) : Json(nullptr)}};
      if (e.center_discriminant) ej["center_discriminant"] = e.center_discriminant->get_str();
      if (e.left_multipliers) {
        Json lm = Json::array();
        for (const auto& u : *e.left_multipliers) lm.push_back(to_json(u));
        ej["left_multipliers"] = lm;
      }
      quat["endomorphisms"] = ej;
    }
    if (r.quaternion.ratl) {
      const auto& v = *r.quaternion.ratl;
      quat["ratL"] = {{"branch", to_string(v.branch)}, {"h_definite", v.h_definite}, {"verdict", to_string(v.verdict)},
                      {"justification", v.justification}};
    }
  }

  Json theorems = Json::array();
  for (const auto& t : r.theorems)
    theorems.push_back({{"tag", t.tag}, {"certified", t.certified}, {"conclusion", t.conclusion}, {"witness", t.witness}});

  Json reflection = nullptr;
  if (r.geom) reflection = to_json(*r.geom);

  return Json{{"schema", kReportSchema},
              {"group", {{"name", r.name}, {"source", r.source}, {"order", r.order}, {"dimension", r.dimension},
                         {"conductor", r.conductor}, {"character_norm", to_json(r.character_norm)}}},
              {"profile", {{"field", field}, {"bilinear", bil}, {"schur", schur}}},
              {"verdict", {{"clause", to_string(r.verdict.clause)},
                           {"exists_any", r.verdict.exists_any},
                           {"exists_rank_n", r.verdict.exists_rank_n},
                           {"exists_rank_2n", r.verdict.exists_rank_2n}}},
              {"lattices", lattices},
              {"order_structure", orders},
              {"reflection", reflection},
              {"reflection_skipped", r.geom ? Json(nullptr) : Json(r.geom_skipped)},
              {"quaternion", quat},
              {"theorems", theorems},
              {"structure", r.structure}};
}

/// Empty when the report matches torus-report/1.
inline std::vector<std::string> report_schema_errors(const Json& j) {
  std::vector<std::string> errs;
  auto need = [&](const Json& obj, const char* key, auto pred, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      errs.push_back(where + "." + key + " missing");
      return false;
    }
    if (!pred(obj[key])) {
      errs.push_back(where + "." + key + " has the wrong type");
      return false;
    }
    return true;
  };
  auto is_obj = [](const Json& x) { return x.is_object(); };
  auto is_arr = [](const Json& x) { return x.is_array(); };
  auto is_str = [](const Json& x) { return x.is_string(); };
  auto is_bool = [](const Json& x) { return x.is_boolean(); };
  auto is_uint = [](const Json& x) { return x.is_number_unsigned(); };
  auto is_int_str = [](const Json& x) {
    if (!x.is_string()) return false;
    const auto s = x.get<std::string>();
    return !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos;
  };
  auto is_rational = [&](const Json& x) { return x.is_array() && x.size() == 2 && is_int_str(x[0]) && is_int_str(x[1]); };
  auto is_cyc = [&](const Json& x) {
    if (!x.is_object() || !x.contains("conductor") || !x.contains("coeffs") || !x["conductor"].is_number_unsigned() ||
        !x["coeffs"].is_array())
      return false;
    for (const auto& c : x["coeffs"])
      if (!is_rational(c)) return false;
    return true;
  };
  auto is_lattice = [&](const Json& x) {
    if (!x.is_object() || !x.contains("ambient") || !x.contains("basis") || !x.contains("denominator")) return false;
    for (const auto& v : x["ambient"]) {
      if (!v.is_array()) return false;
      for (const auto& e : v)
        if (!is_cyc(e)) return false;
    }
    for (const auto& row : x["basis"]) {
      if (!row.is_array()) return false;
      for (const auto& e : row)
        if (!is_int_str(e)) return false;
    }
    return is_int_str(x["denominator"]);
  };

  if (!need(j, "schema", is_str, "report")) return errs;
  if (j["schema"] != kReportSchema) errs.push_back("report.schema is not " + std::string(kReportSchema));
  if (need(j, "group", is_obj, "report")) {
    need(j["group"], "name", is_str, "group");
    need(j["group"], "order", is_uint, "group");
    need(j["group"], "dimension", is_uint, "group");
    need(j["group"], "conductor", is_uint, "group");
    need(j["group"], "character_norm", is_rational, "group");
  }
  if (need(j, "profile", is_obj, "report")) {
    if (need(j["profile"], "field", is_obj, "profile")) need(j["profile"]["field"], "kind", is_str, "profile.field");
    if (need(j["profile"], "bilinear", is_obj, "profile")) need(j["profile"]["bilinear"], "indicator", is_rational, "profile.bilinear");
    if (need(j["profile"], "schur", is_obj, "profile")) need(j["profile"]["schur"], "index", is_uint, "profile.schur");
  }
  if (need(j, "verdict", is_obj, "report")) {
    need(j["verdict"], "clause", is_str, "verdict");
    for (const char* k : {"exists_any", "exists_rank_n", "exists_rank_2n"}) need(j["verdict"], k, is_bool, "verdict");
  }
  if (need(j, "lattices", is_arr, "report")) {
    for (const auto& l : j["lattices"]) {
      need(l, "recipe", is_str, "lattices[]");
      need(l, "rank", is_uint, "lattices[]");
      need(l, "invariant", is_bool, "lattices[]");
      need(l, "lattice", is_lattice, "lattices[]");
      if (l.contains("c") && !is_cyc(l["c"])) errs.push_back("lattices[].c is not a scalar");
    }
  }
  need(j, "order_structure", is_arr, "report");
  if (!j.contains("reflection")) errs.push_back("report.reflection missing");
  else if (!j["reflection"].is_null()) {
    const auto& g = j["reflection"];
    need(g, "index", is_int_str, "reflection");
    need(g, "sublattice", is_lattice, "reflection");
    need(g, "s_determinant", is_cyc, "reflection");
    need(g, "multipliers", is_arr, "reflection");
    if (need(g, "graph", is_obj, "reflection")) need(g["graph"], "edges", is_arr, "reflection.graph");
  }
  if (!j.contains("quaternion")) errs.push_back("report.quaternion missing");
  static const std::vector<std::string> tags{"main2", "nonrationalT", "ratL", "geom", "deform"};
  if (need(j, "theorems", is_arr, "report")) {
    for (const auto& t : j["theorems"]) {
      if (need(t, "tag", is_str, "theorems[]") && std::find(tags.begin(), tags.end(), t["tag"].get<std::string>()) == tags.end())
        errs.push_back("theorems[].tag '" + t["tag"].get<std::string>() + "' is unknown");
      need(t, "certified", is_bool, "theorems[]");
      need(t, "conclusion", is_str, "theorems[]");
      need(t, "witness", is_obj, "theorems[]");
    }
  }
  need(j, "structure", is_str, "report");
  return errs;
}

inline Json catalog_json() {
  Json out = Json::array();
  for (const auto& e : catalog())
    out.push_back({{"name", e.name}, {"source", e.source}, {"description", e.description}, {"dimension", e.dimension},
                   {"group", group_to_json(e.generators)}});
  return out;
}

}  // namespace torlat
