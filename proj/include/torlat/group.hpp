#pragma once

// Finite matrix groups over cyclotomic fields: closure from generators,
// characters, irreducibility, invariant forms and the reflection inventory.

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/linalg.hpp"

namespace torlat {

inline constexpr std::size_t kDefaultGroupCap = 10000;

namespace detail {

inline std::string matrix_key(const CycMatrix& m) {
  std::string key;
  for (const auto& x : m.data()) {
    for (const auto& c : x.coeffs()) {
      key += c.get_str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

}  // namespace detail

inline CycVec mat_vec(const CycMatrix& m, const CycVec& v) {
  return m.apply(std::span<const CycNum>(v));
}

inline CycVec scale(const CycNum& c, const CycVec& v) {
  CycVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(c * x);
  return out;
}

inline CycVec add(const CycVec& a, const CycVec& b) {
  CycVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline CycVec sub(const CycVec& a, const CycVec& b) {
  CycVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline bool is_zero_vector(const CycVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// A finite matrix group G in GL_n(Q(zeta_N)), closed under products.
/// Element 0 is the identity; generators follow in input order.
class GroupRep {
 public:
  std::size_t dimension() const noexcept { return dimension_; }
  Conductor conductor() const noexcept { return conductor_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<CycMatrix>& elements() const noexcept { return elements_; }
  const CycMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::size_t>& generator_indices() const noexcept { return generators_; }

  std::optional<std::size_t> index_of(const CycMatrix& m) const {
    const auto it = index_.find(detail::matrix_key(lift(m, conductor_)));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t product_index(std::size_t a, std::size_t b) const {
    auto idx = index_of(elements_[a] * elements_[b]);
    require(idx.has_value(), ErrorKind::InternalConsistency, "group is not closed under products");
    return *idx;
  }

  std::size_t inverse_index(std::size_t a) const { return inverses_.at(a); }

  friend GroupRep close_group(const std::vector<CycMatrix>& generators, std::size_t cap);

 private:
  std::size_t dimension_ = 0;
  Conductor conductor_ = 1;
  std::vector<CycMatrix> elements_;
  std::vector<std::size_t> generators_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> inverses_;
};

/// Breadth-first closure of the generated group.
inline GroupRep close_group(const std::vector<CycMatrix>& generators, std::size_t cap = kDefaultGroupCap) {
  require(cap >= 1, ErrorKind::InvalidInput, "group cap must be positive");
  std::size_t n = 0;
  if (!generators.empty()) n = generators.front().rows();
  Conductor conductor = 1;
  for (const auto& g : generators) {
    require(g.rows() == n && g.cols() == n, ErrorKind::InvalidInput, "generators must be square of equal size");
    conductor = common_conductor(g.data(), conductor);
  }
  require(n >= 1, ErrorKind::InvalidInput, "at least one generator of positive dimension is required");

  GroupRep group;
  group.dimension_ = n;
  group.conductor_ = conductor;
  std::vector<CycMatrix> gens;
  for (const auto& g : generators) {
    CycMatrix lifted = lift(g, conductor);
    require(!determinant(lifted).is_zero(), ErrorKind::InvalidInput, "generator is not invertible");
    gens.push_back(std::move(lifted));
  }

  auto insert = [&](CycMatrix m) -> std::size_t {
    m = lift(m, conductor);
    std::string key = detail::matrix_key(m);
    if (auto it = group.index_.find(key); it != group.index_.end()) return it->second;
    require(group.elements_.size() < cap, ErrorKind::CapExceeded,
            "group closure exceeded the cap of " + std::to_string(cap) + " elements");
    const std::size_t idx = group.elements_.size();
    group.index_.emplace(std::move(key), idx);
    group.elements_.push_back(std::move(m));
    return idx;
  };

  insert(lift(CycMatrix::identity(n), conductor));
  for (const auto& g : gens) group.generators_.push_back(insert(g));

  std::size_t frontier = 0;
  while (frontier < group.elements_.size()) {
    const CycMatrix current = group.elements_[frontier++];
    for (const auto& g : gens) insert(g * current);
  }
  group.inverses_.reserve(group.elements_.size());
  for (const auto& m : group.elements_) {
    auto inv = inverse(m);
    require(inv.has_value(), ErrorKind::InternalConsistency, "group element is singular");
    auto idx = group.index_of(*inv);
    require(idx.has_value(), ErrorKind::InternalConsistency, "group is not closed under inverses");
    group.inverses_.push_back(*idx);
  }
  return group;
}

/// chi(g) = trace(g) for every element, in element order.
inline std::vector<CycNum> character(const GroupRep& g) {
  std::vector<CycNum> chi;
  chi.reserve(g.order());
  for (const auto& m : g.elements()) chi.push_back(trace(m));
  return chi;
}

struct IrreducibilityCertificate {
  bool irreducible = false;
  Rational norm;  // <chi, chi> = (1/|G|) sum chi(g) chi(g^-1)
};

inline IrreducibilityCertificate irreducibility_check(const GroupRep& g) {
  const auto chi = character(g);
  CycNum sum;
  for (const auto& x : chi) sum += x * x.conj();
  require(sum.is_rational(), ErrorKind::InternalConsistency, "character norm is not rational");
  IrreducibilityCertificate cert;
  cert.norm = sum.rational_value() / Rational(static_cast<long>(g.order()));
  require(is_integer(cert.norm) && sgn(cert.norm) > 0, ErrorKind::InternalConsistency,
          "character norm is not a positive integer");
  cert.irreducible = cert.norm == 1;
  return cert;
}

/// Inner product <u, v> = v^H * gram * u (linear in the first argument).
struct HermitianForm {
  CycMatrix gram;

  CycNum inner(const CycVec& u, const CycVec& v) const {
    const CycVec gu = mat_vec(gram, u);
    CycNum s;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i].conj() * gu[i];
    return s;
  }
};

inline HermitianForm invariant_hermitian(const GroupRep& g) {
  const std::size_t n = g.dimension();
  CycMatrix sum(n, n);
  for (const auto& m : g.elements()) sum = sum + adjoint(m) * m;
  const Rational inv_order(1, static_cast<long>(g.order()));
  return {CycNum(inv_order) * sum};
}

struct HermitianCheck {
  bool hermitian = false;
  bool positive_definite = false;
  bool invariant = false;
  bool ok() const { return hermitian && positive_definite && invariant; }
};

/// Exact validation: Hermitian, leading principal minors positive, G-invariant.
inline HermitianCheck check_hermitian_form(const HermitianForm& form, const GroupRep& g) {
  HermitianCheck c;
  c.hermitian = adjoint(form.gram) == form.gram;
  c.positive_definite = c.hermitian;
  for (std::size_t k = 1; k <= form.gram.rows() && c.positive_definite; ++k) {
    CycMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = form.gram(i, j);
    c.positive_definite = real_sign(determinant(minor)) > 0;
  }
  c.invariant = true;
  for (const auto& m : g.elements()) {
    if (!(adjoint(m) * form.gram * m == form.gram)) {
      c.invariant = false;
      break;
    }
  }
  return c;
}

struct ReflectionData {
  std::size_t element = 0;
  CycVec root;   // spans (id - r)(V)
  CycNum theta;  // det(r), the eigenvalue on the root line
};

/// Every element whose fixed space has dimension n - 1.
inline std::vector<ReflectionData> find_reflections(const GroupRep& g) {
  std::vector<ReflectionData> out;
  const std::size_t n = g.dimension();
  const CycMatrix id = lift(CycMatrix::identity(n), g.conductor());
  for (std::size_t e = 1; e < g.order(); ++e) {
    const CycMatrix d = id - g.element(e);
    if (rank(d) != 1) continue;
    ReflectionData r;
    r.element = e;
    for (std::size_t j = 0; j < n && r.root.empty(); ++j) {
      CycVec col = d.column(j);
      if (!is_zero_vector(col)) r.root = std::move(col);
    }
    r.theta = determinant(g.element(e));
    require(mat_vec(g.element(e), r.root) == scale(r.theta, r.root), ErrorKind::InternalConsistency,
            "reflection root is not an eigenvector");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace torlat
