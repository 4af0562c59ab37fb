#pragma once

// Line lattices of a reflection group: Lambda_j = Lambda ∩ C b_j, their sum
// Lambda^0, cycle multipliers, CM detection and the isogeny graph between
// the elliptic curves l_j / Lambda_j.

#include <optional>
#include <string>
#include <vector>

#include "torlat/group.hpp"
#include "torlat/lattice.hpp"
#include "torlat/schur.hpp"

namespace torlat {

inline constexpr std::size_t kGeneratingSetSearchCap = 200000;

namespace detail {

inline std::size_t first_nonzero_entry(const CycVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  fail(ErrorKind::InternalConsistency, "zero root vector");
}

/// c with v = c * b, for v on the line C b.
inline CycNum line_coordinate(const CycVec& v, const CycVec& b) {
  const std::size_t p = first_nonzero_entry(b);
  const CycNum c = v[p] / b[p];
  require(scale(c, b) == v, ErrorKind::InternalConsistency, "vector is not on the root line");
  return c;
}

inline CycMatrix id_minus(const GroupRep& g, std::size_t element) {
  return lift(CycMatrix::identity(g.dimension()), g.conductor()) - g.element(element);
}

}  // namespace detail

/// First n reflections, in enumeration order, whose roots span V and which generate G.
inline std::vector<ReflectionData> choose_generating_reflections(const GroupRep& g) {
  const auto refs = find_reflections(g);
  require(!refs.empty(), ErrorKind::InvalidInput, "group contains no reflections");
  const std::size_t n = g.dimension();
  require(refs.size() >= n, ErrorKind::InvalidInput, "fewer than n reflections");
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  std::size_t tried = 0;
  while (true) {
    require(++tried <= kGeneratingSetSearchCap, ErrorKind::CapExceeded, "generating reflection search cap exceeded");
    CycMatrix roots(0, n);
    for (std::size_t i : pick) roots.append_row(std::span<const CycNum>(lift(refs[i].root, g.conductor())));
    if (rank(roots) == n) {
      std::vector<CycMatrix> gens;
      for (std::size_t i : pick) gens.push_back(g.element(refs[i].element));
      if (close_group(gens, g.order()).order() == g.order()) {
        std::vector<ReflectionData> out;
        for (std::size_t i : pick) out.push_back(refs[i]);
        return out;
      }
    }
    // next combination in lexicographic order
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == refs.size() - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  fail(ErrorKind::InvalidInput, "no generating set of n reflections");
}

struct LineLattice {
  ZLattice lattice;        // Lambda ∩ C b_j
  RankTwoLattice line;     // coordinates with respect to b_j
  MultiplierRing multipliers;
};

struct CycleMultiplier {
  std::vector<std::size_t> cycle;
  CycNum value;
};

struct ReflectionDecomposition {
  std::vector<ReflectionData> reflections;
  std::vector<LineLattice> lines;
  ZLattice sublattice;     // Lambda^0
  Integer index;           // [Lambda : Lambda^0]
  CycNum s_determinant;    // det(sum_j (id - r_j))
  bool direct_sum = false; // V = l_1 + ... + l_n
  bool projections_ok = false;  // (id - r_j) Lambda in Lambda_j for every j
};

inline ReflectionDecomposition line_lattice_decomposition(const ZLattice& lattice, const GroupRep& g,
                                                          const std::vector<ReflectionData>& refs) {
  const std::size_t n = g.dimension();
  require(refs.size() == n, ErrorKind::InvalidInput, "need exactly n reflections");
  require(lattice.dimension() == n, ErrorKind::InvalidInput, "lattice and group dimensions differ");
  require(lattice.rank() == 2 * n, ErrorKind::InvalidInput, "line decomposition needs a lattice of rank 2n");
  require(invariance_check(lattice, g), ErrorKind::InvalidInput, "lattice is not G-invariant");

  ReflectionDecomposition d{refs, {}, lattice, 0, CycNum(0)};
  CycMatrix roots(0, n);
  for (const auto& r : refs) roots.append_row(std::span<const CycNum>(lift(r.root, g.conductor())));
  d.direct_sum = rank(roots) == n;
  require(d.direct_sum, ErrorKind::InternalConsistency, "root lines do not span V");

  std::vector<ZLattice> parts;
  for (const auto& r : refs) {
    ZLattice lj = lattice_intersect_complex_span(lattice, {r.root});
    require(lj.rank() == 2, ErrorKind::InternalConsistency, "line lattice does not have rank 2");
    const auto basis = lj.basis_vectors();
    RankTwoLattice line(detail::line_coordinate(basis[0], r.root), detail::line_coordinate(basis[1], r.root));
    d.lines.push_back({lj, line, multiplier_ring(line)});
    parts.push_back(std::move(lj));
  }
  d.sublattice = lattice_sum(parts);
  const auto idx = lattice_index(lattice, d.sublattice);
  require(idx.has_value(), ErrorKind::InternalConsistency, "[Lambda : Lambda^0] is infinite");
  d.index = *idx;

  CycMatrix s(n, n);
  for (const auto& r : refs) s = s + detail::id_minus(g, r.element);
  d.s_determinant = determinant(s);
  require(!d.s_determinant.is_zero(), ErrorKind::InternalConsistency, "s = sum (id - r_j) is singular");

  d.projections_ok = true;
  for (std::size_t j = 0; j < n; ++j)
    d.projections_ok = d.projections_ok && d.lines[j].lattice.contains(lattice.image(detail::id_minus(g, refs[j].element)));
  require(d.projections_ok, ErrorKind::InternalConsistency, "(id - r_j) Lambda is not inside Lambda_j");
  return d;
}

/// Eigenvalue of (id - r_{j1})(id - r_{jm})...(id - r_{j2}) on the line of b_{j1}.
inline CycNum cycle_multiplier(const GroupRep& g, const std::vector<ReflectionData>& refs,
                               const std::vector<std::size_t>& cycle) {
  require(!cycle.empty(), ErrorKind::InvalidInput, "empty cycle");
  for (std::size_t j : cycle) require(j < refs.size(), ErrorKind::InvalidInput, "cycle index out of range");
  const std::size_t n = g.dimension();
  CycMatrix p = lift(CycMatrix::identity(n), g.conductor());
  for (std::size_t t = 1; t < cycle.size(); ++t) p = detail::id_minus(g, refs[cycle[t]].element) * p;
  p = detail::id_minus(g, refs[cycle[0]].element) * p;
  const CycVec& b = refs[cycle[0]].root;
  const CycNum c = detail::line_coordinate(mat_vec(p, b), b);
  // p has rank <= 1 with image on l_{j1}, so its trace is the eigenvalue
  require(trace(p) == c, ErrorKind::InternalConsistency, "cycle multiplier disagrees with the trace");
  return c;
}

/// Cycles j_1..j_m with m <= bound and j_t != j_{t+1} (cyclically), in lexicographic order.
inline std::vector<std::vector<std::size_t>> enumerate_cycles(std::size_t count, std::size_t bound) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<std::size_t> c(len, 0);
    while (true) {
      bool ok = true;
      for (std::size_t t = 0; t + 1 < len && ok; ++t) ok = c[t] != c[t + 1];
      if (len > 1) ok = ok && c.front() != c.back();
      if (ok) out.push_back(c);
      std::size_t t = len;
      while (t > 0 && c[t - 1] == count - 1) c[--t] = 0;
      if (t == 0) break;
      ++c[t - 1];
    }
  }
  return out;
}

inline std::vector<CycleMultiplier> cycle_multipliers(const GroupRep& g, const std::vector<ReflectionData>& refs,
                                                      std::size_t bound) {
  std::vector<CycleMultiplier> out;
  for (auto& c : enumerate_cycles(refs.size(), bound)) {
    CycNum v = cycle_multiplier(g, refs, c);
    out.push_back({std::move(c), std::move(v)});
  }
  return out;
}

struct CmWitness {
  CycleMultiplier multiplier;
  MultiplierRing ring;  // of Lambda_{j1}
};

/// First non-rational cycle multiplier c (with c Lambda_{j1} in Lambda_{j1} verified), if any.
inline std::optional<CmWitness> cm_detect(const ReflectionDecomposition& d, const std::vector<CycleMultiplier>& ms) {
  for (const auto& m : ms) {
    if (m.value.is_rational()) continue;
    const auto& line = d.lines[m.cycle.front()];
    require(line.line.is_stable_under(m.value), ErrorKind::InternalConsistency,
            "non-rational cycle multiplier does not preserve its line lattice");
    const MultiplierRing ring = multiplier_ring(line.line);
    require(!ring.is_integers && ring.contains(m.value), ErrorKind::InternalConsistency,
            "multiplier ring misses a cycle multiplier");
    return CmWitness{m, ring};
  }
  return std::nullopt;
}

struct IsogenyEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  CycNum inner;   // <b_from, b_to>
  Integer index;  // [Lambda_to : (id - r_to) Lambda_from]
  IsogenyWitness scalar;  // from isogeny_test(Lambda_to, Lambda_from)
};

struct IsogenyGraph {
  std::vector<IsogenyEdge> edges;  // both directions of every adjacent pair
  bool connected = false;
};

inline IsogenyGraph isogeny_graph(const ReflectionDecomposition& d, const GroupRep& g) {
  const HermitianForm form = invariant_hermitian(g);
  const std::size_t n = d.reflections.size();
  IsogenyGraph graph;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const CycNum inner = form.inner(d.reflections[j].root, d.reflections[k].root);
      const CycMatrix p = detail::id_minus(g, d.reflections[k].element);
      const ZLattice image = d.lines[j].lattice.image(p);
      require(inner.is_zero() == (image.rank() == 0), ErrorKind::InternalConsistency,
              "(id - r_k) on l_j is neither zero nor injective as predicted by the inner product");
      if (inner.is_zero()) continue;
      const auto idx = lattice_index(d.lines[k].lattice, image);
      require(idx.has_value(), ErrorKind::InternalConsistency, "(id - r_k) Lambda_j has infinite index in Lambda_k");
      const auto iso = isogeny_test(d.lines[k].line, d.lines[j].line);
      require(iso.has_value(), ErrorKind::InternalConsistency, "adjacent line lattices are not isogenous");
      graph.edges.push_back({j, k, inner, *idx, *iso});
      adj[j].push_back(k);
    }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  graph.connected = reached == n;
  require(graph.connected, ErrorKind::InternalConsistency, "isogeny graph is disconnected for an irreducible group");
  return graph;
}

struct GeomReport {
  ReflectionDecomposition decomposition;
  std::vector<CycleMultiplier> multipliers;
  std::size_t cycle_bound = 0;
  bool multipliers_generate_character_field = false;
  std::optional<CmWitness> cm;
  IsogenyGraph graph;
  bool weyl = false;     // rational character
  bool geom_i = false;   // V / Lambda^0 is a product of mutually isogenous elliptic curves
  bool geom_ii = false;  // V / Lambda is isogenous to a self-product of one of them
  bool geom_iii = false; // non-Weyl: that curve has CM, witnessed by a cycle multiplier
};

inline GeomReport geom_report(const GroupRep& g, const ZLattice& lattice, const FieldClass& field,
                              std::optional<std::size_t> cycle_bound = std::nullopt) {
  GeomReport r;
  r.decomposition = line_lattice_decomposition(lattice, g, choose_generating_reflections(g));
  r.cycle_bound = cycle_bound.value_or(g.dimension() + 1);
  r.multipliers = cycle_multipliers(g, r.decomposition.reflections, r.cycle_bound);
  std::vector<CycNum> values;
  for (const auto& m : r.multipliers) values.push_back(m.value);
  const Conductor m = common_conductor(values);
  r.multipliers_generate_character_field = generated_field(values, m).dimension() == field.degree;
  r.cm = cm_detect(r.decomposition, r.multipliers);
  r.graph = isogeny_graph(r.decomposition, g);
  r.weyl = field.kind == FieldKind::Rational;
  if (r.weyl) {
    for (const auto& mul : r.multipliers)
      require(mul.value.is_rational(), ErrorKind::InternalConsistency, "Weyl group with a non-rational cycle multiplier");
  }
  r.geom_i = r.decomposition.direct_sum && r.graph.connected;
  r.geom_ii = r.geom_i;
  r.geom_iii = !r.weyl && r.cm.has_value();
  return r;
}

}  // namespace torlat
