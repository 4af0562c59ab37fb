#pragma once

// Character field, Frobenius-Schur type and Schur index of an irreducible
// finite matrix group, and the resulting decision on invariant lattices.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"
#include "torlat/linalg.hpp"

namespace torlat {

enum class FieldKind { Rational, ImaginaryQuadratic, Other };
enum class BilinearType { Orthogonal, Symplectic, Complex };

inline std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::Rational: return "rational";
    case FieldKind::ImaginaryQuadratic: return "imaginary-quadratic";
    case FieldKind::Other: return "other";
  }
  return "?";
}

inline std::string to_string(BilinearType t) {
  switch (t) {
    case BilinearType::Orthogonal: return "orthogonal";
    case BilinearType::Symplectic: return "symplectic";
    case BilinearType::Complex: return "complex";
  }
  return "?";
}

struct FieldClass {
  FieldKind kind = FieldKind::Rational;
  std::size_t degree = 1;
  bool real = true;
  Integer discriminant = 0;  // fundamental discriminant when imaginary quadratic
  CycNum generator;          // a non-rational character value generating the field (degree 2)
  RationalSubspaceBasis field;  // Q(chi) inside Q(zeta_N)
};

/// Q(chi) as the Q-algebra generated by all traces inside Q(zeta_N).
inline FieldClass classify_character_field(const GroupRep& g) {
  FieldClass fc;
  const auto chi = character(g);
  fc.field = generated_field(chi, g.conductor());
  fc.degree = fc.field.dimension();
  fc.real = true;
  for (const auto& x : chi) fc.real = fc.real && x.is_real();
  fc.generator = CycNum(1);
  if (fc.degree == 1) {
    fc.kind = FieldKind::Rational;
    return fc;
  }
  if (fc.degree == 2 && !fc.real) {
    fc.kind = FieldKind::ImaginaryQuadratic;
    for (const auto& x : chi) {
      if (x.is_rational()) continue;
      const auto p = minimal_polynomial(x);  // t^2 + p1 t + p0
      fc.generator = x;
      fc.discriminant = quadratic_field_discriminant(p[1] * p[1] - 4 * p[0]);
      break;
    }
    require(sgn(fc.discriminant) < 0, ErrorKind::InternalConsistency,
            "non-real quadratic character field has a positive discriminant");
    return fc;
  }
  fc.kind = FieldKind::Other;
  return fc;
}

struct BilinearForm {
  CycMatrix gram;  // B(u, v) = u^T gram v
};

struct BilinearResult {
  BilinearType type = BilinearType::Complex;
  Rational indicator;                 // (1/|G|) sum chi(g^2)
  std::optional<BilinearForm> form;   // invariant form when the indicator is nonzero
};

/// Frobenius-Schur indicator and, when nonzero, an invariant bilinear form by averaging.
inline BilinearResult bilinear_type(const GroupRep& g) {
  BilinearResult out;
  CycNum sum;
  for (std::size_t e = 0; e < g.order(); ++e) sum += trace(g.element(g.product_index(e, e)));
  require(sum.is_rational(), ErrorKind::InternalConsistency, "Frobenius-Schur sum is not rational");
  out.indicator = sum.rational_value() / Rational(static_cast<long>(g.order()));
  if (out.indicator == 1) out.type = BilinearType::Orthogonal;
  else if (out.indicator == -1) out.type = BilinearType::Symplectic;
  else if (out.indicator == 0) out.type = BilinearType::Complex;
  else fail(ErrorKind::InternalConsistency, "Frobenius-Schur indicator outside {-1, 0, 1}: " + out.indicator.get_str());
  if (out.type == BilinearType::Complex) return out;
  const std::size_t n = g.dimension();
  for (std::size_t a = 0; a < n && !out.form; ++a) {
    for (std::size_t b = 0; b < n && !out.form; ++b) {
      CycMatrix seed(n, n);
      seed(a, b) = CycNum(1);
      CycMatrix avg(n, n);
      for (const auto& m : g.elements()) avg = avg + m.transpose() * seed * m;
      if (!avg.is_zero_matrix()) out.form = BilinearForm{avg};
    }
  }
  require(out.form.has_value(), ErrorKind::InternalConsistency, "no invariant bilinear form found");
  return out;
}

struct BilinearCheck {
  bool invariant = false;
  bool symmetric = false;
  bool skew = false;
  bool nondegenerate = false;
};

inline BilinearCheck check_bilinear_form(const BilinearForm& f, const GroupRep& g) {
  BilinearCheck c;
  c.invariant = true;
  for (const auto& m : g.elements())
    if (!(m.transpose() * f.gram * m == f.gram)) c.invariant = false;
  c.symmetric = f.gram.transpose() == f.gram;
  c.skew = f.gram.transpose() == CycNum(-1) * f.gram;
  c.nondegenerate = !determinant(f.gram).is_zero();
  return c;
}

// ---------------------------------------------------------------------------
// Schur index by descent to a simple QG-submodule.

/// Q-span of the G-orbit of v, as an echelon basis of rational coordinates.
inline RationalSubspaceBasis orbit_span(const GroupRep& g, const CycVec& v) {
  const Conductor n = g.conductor();
  RationalSubspaceBasis span(g.dimension() * euler_phi(n));
  for (const auto& m : g.elements()) span.add(rational_coordinates(mat_vec(m, lift(v, n)), n));
  return span;
}

struct SchurOptions {
  std::uint64_t seed = 0x5eed;
  int random_candidates = 8;
  int stable_passes = 2;
};

struct SchurResult {
  std::size_t index = 1;          // m
  std::size_t module_dimension = 0;  // dim_Q of the simple submodule found
  std::size_t field_degree = 1;
  int stable_passes = 0;          // full passes without a decrease
  CycVec start;
  std::vector<CycVec> witness;    // Q-basis of the submodule
};

/// Default starting vectors: e_1, then other basis vectors and small combinations.
inline std::vector<CycVec> schur_start_vectors(const GroupRep& g, std::size_t count) {
  const std::size_t n = g.dimension();
  std::vector<CycVec> out;
  auto unit = [&](std::size_t i) {
    CycVec v(n, CycNum(0));
    v[i] = CycNum(1);
    return v;
  };
  for (std::size_t i = 0; i < n && out.size() < count; ++i) out.push_back(unit(i));
  const CycNum z = CycNum::zeta(std::max<Conductor>(g.conductor(), 1));
  std::vector<CycNum> coeffs{CycNum(1), CycNum(-1), CycNum(2), z, CycNum(1) + z, CycNum(3), z * z};
  for (std::size_t k = 0; out.size() < count; ++k) {
    CycVec v(n, CycNum(0));
    for (std::size_t i = 0; i < n; ++i) v[i] = coeffs[(k + 2 * i) % coeffs.size()];
    if (n == 1) v[0] = coeffs[(k + 2) % coeffs.size()] + CycNum(static_cast<long>(k / coeffs.size()));
    if (is_zero_vector(v)) continue;
    out.push_back(std::move(v));
  }
  return out;
}

inline SchurResult schur_index(const GroupRep& g, const FieldClass& field, std::optional<CycVec> start = std::nullopt,
                               const SchurOptions& options = {}) {
  const Conductor cond = g.conductor();
  const std::size_t n = g.dimension();
  SchurResult out;
  out.field_degree = field.degree;
  if (start) {
    out.start = *start;
  } else {
    // first standard basis vector, falling back to sums of basis vectors
    out.start = CycVec(n, CycNum(0));
    out.start[0] = CycNum(1);
  }
  require(!is_zero_vector(out.start), ErrorKind::InvalidInput, "schur_index: zero starting vector");
  RationalSubspaceBasis current = orbit_span(g, out.start);
  if (!start) {
    for (std::size_t k = 1; k < n && current.dimension() < field.degree * n; ++k) {
      out.start[k] = CycNum(1);
      current = orbit_span(g, out.start);
    }
  }
  std::mt19937_64 rng(options.seed);
  int stable = 0;
  while (stable < options.stable_passes) {
    std::vector<RatVec> candidates = current.basis();
    for (int r = 0; r < options.random_candidates; ++r) {
      RatVec v(current.ambient_dimension(), Rational(0));
      for (const auto& b : current.basis()) {
        const long c = static_cast<long>(rng() % 7) - 3;
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * b[j];
      }
      candidates.push_back(std::move(v));
    }
    bool decreased = false;
    for (const auto& c : candidates) {
      bool zero = true;
      for (const auto& x : c) zero = zero && is_zero(x);
      if (zero) continue;
      RationalSubspaceBasis w = orbit_span(g, from_rational_coordinates(c, cond, n));
      if (w.dimension() < current.dimension()) {
        current = std::move(w);
        decreased = true;
        break;
      }
    }
    stable = decreased ? 0 : stable + 1;
  }
  out.stable_passes = stable;
  out.module_dimension = current.dimension();
  const std::size_t unit = field.degree * n;
  require(out.module_dimension % unit == 0, ErrorKind::InternalConsistency,
          "simple submodule dimension is not a multiple of deg(Q(chi)) * n");
  out.index = out.module_dimension / unit;
  for (const auto& b : current.basis()) out.witness.push_back(from_rational_coordinates(b, cond, n));
  if (field.real)
    require(out.index <= 2, ErrorKind::InternalConsistency, "real character with Schur index above 2");
  return out;
}

struct FormCertificate {
  bool g_stable = false;
  bool field_stable = false;   // stable under multiplication by Q(chi)
  bool dimension_ok = false;   // dim_Q = deg * n
  bool spans_v = false;        // C-span of the witness is V
  bool ok() const { return g_stable && field_stable && dimension_ok && spans_v; }
};

/// Checks that a Schur witness is a Q(chi)-form of V.
inline FormCertificate qchi_form_certificate(const GroupRep& g, const FieldClass& field,
                                             const std::vector<CycVec>& witness) {
  FormCertificate c;
  const Conductor cond = g.conductor();
  const std::size_t n = g.dimension();
  std::vector<RatVec> rows;
  for (const auto& w : witness) rows.push_back(rational_coordinates(w, cond));
  const auto span = RationalSubspaceBasis::span(n * euler_phi(cond), rows);
  c.g_stable = true;
  for (std::size_t gi : g.generator_indices())
    for (const auto& w : witness)
      if (!span.contains(rational_coordinates(mat_vec(g.element(gi), w), cond))) c.g_stable = false;
  c.field_stable = true;
  for (const auto& b : field.field.basis()) {
    const CycNum z = CycNum::from_coefficients(cond, b);
    for (const auto& w : witness)
      if (!span.contains(rational_coordinates(scale(z, w), cond))) c.field_stable = false;
  }
  c.dimension_ok = span.dimension() == field.degree * n;
  c.spans_v = !witness.empty() && rank(CycMatrix::from_rows(witness)) == n;
  return c;
}

// ---------------------------------------------------------------------------
// Kernel-dimension gcd shortcut: u ranges over explicit elements of QG.

struct GcdTerm {
  std::string description;
  std::size_t kernel_dimension = 0;
};

struct GcdCertificate {
  std::size_t gcd = 0;
  std::vector<GcdTerm> terms;  // the elements that lowered the running gcd
};

inline std::optional<GcdCertificate> gcd_kernel_shortcut(const GroupRep& g, const FieldClass& field) {
  const std::size_t n = g.dimension();
  const Conductor cond = g.conductor();
  GcdCertificate cert;
  auto consider = [&](const CycMatrix& u, std::string what) {
    const std::size_t k = n - rank(u);
    const std::size_t next = std::gcd(cert.gcd, k);
    if (next != cert.gcd) {
      cert.gcd = next;
      cert.terms.push_back({std::move(what), k});
    }
    return cert.gcd == 1;
  };
  if (consider(CycMatrix(n, n), "0")) return cert;
  // roots of unity of Q(zeta_N) (the +-zeta_N^k) that lie in Q(chi); lambda * id is central in QG
  std::vector<CycNum> lambdas;
  for (Conductor k = 0; k < cond; ++k) {
    for (const CycNum& l : {CycNum::zeta(cond, k), -CycNum::zeta(cond, k)}) {
      if (!field.field.contains(l.coeffs())) continue;
      if (std::find(lambdas.begin(), lambdas.end(), l) == lambdas.end()) lambdas.push_back(l);
    }
  }
  const CycMatrix id = lift(CycMatrix::identity(n), cond);
  for (std::size_t e = 0; e < g.order(); ++e) {
    for (const auto& l : lambdas) {
      if (consider(g.element(e) - l * id, "g" + std::to_string(e) + " - (" + l.to_string() + ")")) return cert;
    }
  }
  for (std::size_t a = 1; a < g.order(); ++a)
    for (std::size_t b = a + 1; b < g.order(); ++b) {
      if (consider(g.element(a) + g.element(b), "g" + std::to_string(a) + " + g" + std::to_string(b))) return cert;
      if (consider(g.element(a) - g.element(b), "g" + std::to_string(a) + " - g" + std::to_string(b))) return cert;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct CharacterProfile {
  FieldClass field;
  BilinearResult bilinear;
  SchurResult schur;
};

inline CharacterProfile character_profile(const GroupRep& g, const SchurOptions& options = {}) {
  CharacterProfile p;
  p.field = classify_character_field(g);
  p.bilinear = bilinear_type(g);
  p.schur = schur_index(g, p.field, std::nullopt, options);
  if (!p.field.real)
    require(p.bilinear.type == BilinearType::Complex, ErrorKind::InternalConsistency,
            "non-real character with a nonzero Frobenius-Schur indicator");
  return p;
}

enum class VerdictClause { CI, CII, None };

inline std::string to_string(VerdictClause c) {
  switch (c) {
    case VerdictClause::CI: return "c-i";
    case VerdictClause::CII: return "c-ii";
    case VerdictClause::None: return "none";
  }
  return "?";
}

struct LatticeVerdict {
  bool exists_any = false;
  bool exists_rank_n = false;
  bool exists_rank_2n = false;
  VerdictClause clause = VerdictClause::None;
};

/// Decision table for nonzero invariant lattices from the field class and m.
inline LatticeVerdict lattice_existence_verdict(FieldKind kind, std::size_t m, bool real, BilinearType type) {
  LatticeVerdict v;
  if (m == 1 && (kind == FieldKind::Rational || kind == FieldKind::ImaginaryQuadratic)) {
    v.clause = VerdictClause::CI;
  } else if (m == 2 && kind == FieldKind::Rational) {
    v.clause = VerdictClause::CII;
  }
  v.exists_any = v.clause != VerdictClause::None;
  v.exists_rank_2n = v.exists_any;
  v.exists_rank_n = m == 1 && kind == FieldKind::Rational;
  if (real) require(m <= 2, ErrorKind::InternalConsistency, "real character with Schur index above 2");
  if (m >= 3) require(!v.exists_any, ErrorKind::InternalConsistency, "lattice claimed with Schur index >= 3");
  if (type == BilinearType::Complex && v.exists_any)
    require(m == 1 && kind == FieldKind::ImaginaryQuadratic, ErrorKind::InternalConsistency,
            "non-self-dual module with a lattice must be Schur index 1 over an imaginary quadratic field");
  return v;
}

inline LatticeVerdict lattice_existence_verdict(const CharacterProfile& p) {
  return lattice_existence_verdict(p.field.kind, p.schur.index, p.field.real, p.bilinear.type);
}

}  // namespace torlat
