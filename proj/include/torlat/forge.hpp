#pragma once

// Constructions of invariant lattices (over Z, by extension of scalars, over
// imaginary-quadratic orders) and splitting of O-stable lattices into
// rank-one O-modules for Euclidean orders.

#include <optional>
#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"
#include "torlat/lattice.hpp"
#include "torlat/schur.hpp"

namespace torlat {

/// The order Z + Z*omega of discriminant D < 0 inside a cyclotomic field.
class ImaginaryQuadraticOrder {
 public:
  static ImaginaryQuadraticOrder from_discriminant(long d) {
    require(d < 0, ErrorKind::InvalidInput, "imaginary quadratic order needs a negative discriminant");
    const long r = ((d % 4) + 4) % 4;
    require(r == 0 || r == 1, ErrorKind::InvalidInput, "discriminant must be 0 or 1 mod 4");
    ImaginaryQuadraticOrder o;
    o.discriminant_ = d;
    if (d == -4) {
      o.omega_ = CycNum::zeta(4);
    } else if (d == -3) {
      o.omega_ = CycNum::zeta(3);
    } else if (r == 0) {
      o.omega_ = sqrt_integer(d / 4);
    } else {
      o.omega_ = (CycNum(1) + sqrt_integer(d)) * CycNum(make_rational(1, 2));
    }
    o.trace_ = (o.omega_ + o.omega_.conj()).rational_value();
    o.norm_ = (o.omega_ * o.omega_.conj()).rational_value();
    require(o.trace_ * o.trace_ - 4 * o.norm_ == d, ErrorKind::InternalConsistency,
            "order generator has the wrong discriminant");
    return o;
  }

  /// Maximal order of Q(sqrt(t)) for a negative rational t.
  static ImaginaryQuadraticOrder maximal_order_of(const Rational& t) {
    const Integer d = quadratic_field_discriminant(t);
    return from_discriminant(d.get_si());
  }

  long discriminant() const noexcept { return discriminant_; }
  const CycNum& omega() const noexcept { return omega_; }
  bool euclidean() const noexcept {
    return discriminant_ == -3 || discriminant_ == -4 || discriminant_ == -7 || discriminant_ == -8 ||
           discriminant_ == -11;
  }

  /// (a, b) with x = a + b*omega, when x lies in Q(omega).
  std::optional<std::pair<Rational, Rational>> coordinates(const CycNum& x) const {
    const CycNum b = (x - x.conj()) / (omega_ - omega_.conj());
    if (!b.is_rational()) return std::nullopt;
    const CycNum a = x - b * omega_;
    if (!a.is_rational()) return std::nullopt;
    return std::make_pair(a.rational_value(), b.rational_value());
  }

  bool contains(const CycNum& x) const {
    const auto c = coordinates(x);
    return c && is_integer(c->first) && is_integer(c->second);
  }

  Rational norm(const CycNum& x) const {
    const CycNum n = x * x.conj();
    return n.rational_value();
  }

  /// q in O with N(a - q b) < N(b); requires a Euclidean order.
  CycNum quotient(const CycNum& a, const CycNum& b) const {
    require(euclidean(), ErrorKind::OutOfScope, "division with remainder needs a Euclidean order");
    const auto c = coordinates(a / b);
    require(c.has_value(), ErrorKind::InternalConsistency, "quotient outside Q(omega)");
    const Integer r0 = floor(c->first), s0 = floor(c->second);
    CycNum best;
    std::optional<Rational> best_norm;
    for (int dr = -1; dr <= 2; ++dr)
      for (int ds = -1; ds <= 2; ++ds) {
        const CycNum q = CycNum(Rational(r0 + dr)) + CycNum(Rational(s0 + ds)) * omega_;
        const Rational nr = norm(a - q * b);
        if (!best_norm || nr < *best_norm) {
          best_norm = nr;
          best = q;
        }
      }
    require(*best_norm < norm(b), ErrorKind::InternalConsistency, "Euclidean division failed to reduce the norm");
    return best;
  }

  std::string describe() const {
    if (discriminant_ == -4) return "Z[i]";
    if (discriminant_ == -3) return "Z[zeta3]";
    return "order of discriminant " + std::to_string(discriminant_);
  }

 private:
  long discriminant_ = -4;
  CycNum omega_;
  Rational trace_;
  Rational norm_;
};

/// Sum over g of Z * g(v) for every v in the witness basis.
inline ZLattice orbit_lattice(const GroupRep& g, const std::vector<CycVec>& vectors) {
  std::vector<CycVec> gens;
  for (const auto& m : g.elements())
    for (const auto& v : vectors) gens.push_back(mat_vec(m, v));
  return ZLattice::from_generators(gens, g.dimension(), g.conductor());
}

/// Invariant lattice of rank n from a Q-form (Schur index 1, rational character).
inline ZLattice construct_rank_n(const GroupRep& g, const FieldClass& field, const std::vector<CycVec>& qform) {
  require(field.kind == FieldKind::Rational, ErrorKind::InvalidInput, "construct_rank_n needs a rational character");
  const auto cert = qchi_form_certificate(g, field, qform);
  require(cert.ok(), ErrorKind::InvalidInput, "construct_rank_n: witness is not a Q-form");
  ZLattice l = orbit_lattice(g, qform);
  require(l.rank() == g.dimension(), ErrorKind::InternalConsistency, "orbit of a Q-form does not have rank n");
  require(invariance_check(l, g), ErrorKind::InternalConsistency, "orbit lattice is not invariant");
  return l;
}

/// Lambda + c * Lambda for a non-real c.
inline ZLattice extend_rank_2n(const ZLattice& lattice, const CycNum& c) {
  require(!(c - c.conj()).is_zero(), ErrorKind::DomainError, "extend_rank_2n: c must not be real");
  ZLattice out = lattice_sum(lattice, lattice.scaled(c));
  require(out.rank() == 2 * lattice.rank(), ErrorKind::InternalConsistency, "Lambda + c Lambda is not a direct sum");
  return out;
}

/// Sum over g of O * g(v).
inline ZLattice orbit_lattice_over_order(const GroupRep& g, const FieldClass& field,
                                         const ImaginaryQuadraticOrder& order, const CycVec& v) {
  require(field.kind == FieldKind::ImaginaryQuadratic, ErrorKind::InvalidInput,
          "orbit_lattice_over_order needs an imaginary quadratic character field");
  const long fd = quadratic_field_discriminant(Rational(order.discriminant())).get_si();
  require(field.discriminant == fd, ErrorKind::InvalidInput, "order does not lie in the character field");
  require(!is_zero_vector(v), ErrorKind::InvalidInput, "orbit_lattice_over_order: zero vector");
  std::vector<CycVec> gens;
  for (const auto& m : g.elements()) {
    const CycVec w = mat_vec(m, v);
    gens.push_back(w);
    gens.push_back(scale(order.omega(), w));
  }
  return ZLattice::from_generators(gens, g.dimension(), std::lcm(g.conductor(), order.omega().conductor()));
}

inline bool is_order_stable(const ZLattice& lattice, const ImaginaryQuadraticOrder& order) {
  for (const auto& v : lattice.basis_vectors())
    if (!lattice.contains(scale(order.omega(), v))) return false;
  return true;
}

struct Saturation {
  ZLattice lattice;
  Integer index;  // [Lambda + omega Lambda : Lambda]
};

/// Lambda + omega * Lambda, the smallest O-stable lattice containing Lambda.
inline Saturation order_saturate(const ZLattice& lattice, const ImaginaryQuadraticOrder& order) {
  Saturation s{lattice_sum(lattice, lattice.scaled(order.omega())), 0};
  const auto idx = lattice_index(s.lattice, lattice);
  require(idx.has_value(), ErrorKind::InternalConsistency,
          "order saturation has infinite index: the lattice is not commensurable with an O-stable one");
  s.index = *idx;
  return s;
}

struct OrderSplitting {
  std::vector<CycVec> basis;             // Lambda = O v_1 + ... + O v_k
  std::vector<RankTwoLattice> factors;   // O v_i inside the line C v_i
};

namespace detail {

inline std::size_t first_nonzero(const CycVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

}  // namespace detail

inline OrderSplitting split_as_order_module(const ZLattice& lattice, const ImaginaryQuadraticOrder& order) {
  require(order.euclidean(), ErrorKind::OutOfScope,
          "splitting is implemented for Euclidean orders only (discriminants -3, -4, -7, -8, -11)");
  require(is_order_stable(lattice, order), ErrorKind::InvalidInput, "split_as_order_module: lattice is not O-stable");
  const CycNum& w = order.omega();
  const Conductor m = std::lcm(lattice.conductor(), w.conductor());
  const std::size_t width = lattice.dimension() * euler_phi(m);
  const auto vectors = lattice.lifted(m).basis_vectors();

  // greedy F-basis u_1..u_k of F * Lambda, F = Q(omega)
  std::vector<CycVec> u;
  RationalSubspaceBasis fspan(width);
  for (const auto& v : vectors) {
    RationalSubspaceBasis trial = fspan;
    const bool a = trial.add(rational_coordinates(v, m));
    const bool b = trial.add(rational_coordinates(scale(w, v), m));
    if (a && b) {
      fspan = std::move(trial);
      u.push_back(v);
    }
  }
  const std::size_t k = u.size();
  require(2 * k == lattice.rank(), ErrorKind::InternalConsistency, "O-stable lattice has odd rank");

  // coordinates of every basis vector in O-terms: v = sum (x_j + y_j omega) u_j
  RatMatrix frame(2 * k, width);
  for (std::size_t j = 0; j < k; ++j) {
    const RatVec a = rational_coordinates(u[j], m);
    const RatVec b = rational_coordinates(scale(w, u[j]), m);
    for (std::size_t c = 0; c < width; ++c) {
      frame(2 * j, c) = a[c];
      frame(2 * j + 1, c) = b[c];
    }
  }
  const RatMatrix frame_t = frame.transpose();
  std::vector<std::vector<CycNum>> rows;
  Integer d = 1;
  std::vector<RatVec> raw;
  for (const auto& v : vectors) {
    const RatVec target = rational_coordinates(v, m);
    const auto x = solve(frame_t, std::span<const Rational>(target));
    require(x.has_value(), ErrorKind::InternalConsistency, "basis vector outside the F-span");
    for (const auto& q : *x) d = lcm(d, q.get_den());
    raw.push_back(*x);
  }
  for (const auto& x : raw) {
    std::vector<CycNum> row;
    for (std::size_t j = 0; j < k; ++j)
      row.push_back(CycNum(x[2 * j] * d) + CycNum(x[2 * j + 1] * d) * w);
    rows.push_back(std::move(row));
  }

  // Hermite reduction over the Euclidean order
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        if (best == rows.size() || order.norm(rows[i][c]) < order.norm(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[best], rows[r]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c].is_zero()) continue;
        const CycNum q = order.quotient(rows[i][c], rows[r][c]);
        for (std::size_t j = c; j < k; ++j) rows[i][j] -= q * rows[r][j];
        if (!rows[i][c].is_zero()) cleared = false;
      }
      if (cleared) break;
    }
    if (r < rows.size() && !rows[r][c].is_zero()) ++r;
  }
  require(r == k, ErrorKind::InternalConsistency, "O-Hermite reduction lost rank");

  OrderSplitting out;
  const CycNum inv_d = CycNum(make_rational(Integer(1), d));
  for (std::size_t i = 0; i < k; ++i) {
    CycVec v(lattice.dimension(), CycNum(0));
    for (std::size_t j = 0; j < k; ++j) v = add(v, scale(rows[i][j] * inv_d, u[j]));
    out.basis.push_back(v);
  }
  std::vector<CycVec> gens;
  for (const auto& v : out.basis) {
    gens.push_back(v);
    gens.push_back(scale(w, v));
  }
  require(ZLattice::from_generators(gens, lattice.dimension(), m) == lattice, ErrorKind::InternalConsistency,
          "O-basis does not generate the lattice");
  for (const auto& v : out.basis) {
    const CycNum& g = v[detail::first_nonzero(v)];
    out.factors.emplace_back(g, w * g);
  }
  return out;
}

}  // namespace torlat
