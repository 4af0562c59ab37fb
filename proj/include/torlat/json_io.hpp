#pragma once

// JSON encodings. Scalars: {"conductor": N, "coeffs": [["p", "q"], ...]} in the
// power basis of Q(zeta_N). Groups: {"conductor", "dimension", "generators"}
// with row-major matrices. Lattices: (1/denominator) * basis * ambient.

#include <json.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"
#include "torlat/lattice.hpp"

namespace torlat {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

inline Json to_json(const Integer& z) { return z.get_str(); }

inline Json to_json(const CycNum& x) {
  Json coeffs = Json::array();
  for (const auto& q : x.coeffs()) coeffs.push_back(to_json(q));
  return Json{{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

inline Json to_json(const CycVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const CycMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row_vector(i)));
  return out;
}

inline Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& z : m.row(i)) row.push_back(z.get_str());
    out.push_back(row);
  }
  return out;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return parse_rational(j[0].get<std::string>() + "/" + j[1].get<std::string>());
  fail(ErrorKind::InvalidInput, "rational must be an integer, a \"p/q\" string or a [\"p\", \"q\"] pair");
}

inline CycNum cyc_from_json(const Json& j) {
  if (!j.is_object()) return CycNum(rational_from_json(j));
  require(j.contains("conductor") && j.contains("coeffs"), ErrorKind::InvalidInput,
          "scalar needs \"conductor\" and \"coeffs\"");
  require(j["conductor"].is_number_unsigned() && j["conductor"].get<long long>() >= 1, ErrorKind::InvalidInput,
          "conductor must be a positive integer");
  require(j["coeffs"].is_array(), ErrorKind::InvalidInput, "\"coeffs\" must be an array");
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(rational_from_json(c));
  return CycNum::from_coefficients(j["conductor"].get<Conductor>(), std::move(coeffs));
}

struct GroupInput {
  std::string name = "input";
  std::vector<CycMatrix> generators;
};

/// Matrices may be given as n rows of n scalars or as one row-major list of n^2 scalars.
inline GroupInput group_from_json(const Json& j) {
  require(j.is_object() && j.contains("dimension") && j.contains("generators"), ErrorKind::InvalidInput,
          "group needs \"dimension\" and \"generators\"");
  require(j["dimension"].is_number_unsigned(), ErrorKind::InvalidInput, "dimension must be a positive integer");
  const std::size_t n = j["dimension"].get<std::size_t>();
  require(n >= 1, ErrorKind::InvalidInput, "dimension must be a positive integer");
  std::optional<Conductor> conductor;
  if (j.contains("conductor")) {
    require(j["conductor"].is_number_unsigned() && j["conductor"].get<long long>() >= 1, ErrorKind::InvalidInput,
            "conductor must be a positive integer");
    conductor = j["conductor"].get<Conductor>();
  }
  require(j["generators"].is_array() && !j["generators"].empty(), ErrorKind::InvalidInput,
          "\"generators\" must be a nonempty array");
  GroupInput g;
  if (j.contains("name") && j["name"].is_string()) g.name = j["name"].get<std::string>();
  std::vector<std::vector<CycNum>> all;
  for (const auto& m : j["generators"]) {
    require(m.is_array() && !m.empty(), ErrorKind::InvalidInput, "generator must be a nonempty array");
    std::vector<CycNum> entries;
    // n rows of n scalars, or n^2 scalars; for n = 1 a one-entry row is nested, a pair is a rational
    const bool nested = n == 1 ? m.size() == 1 && m[0].is_array() && m[0].size() == 1 : m.size() == n;
    if (nested) {
      for (const auto& row : m) {
        require(row.is_array() && row.size() == n, ErrorKind::InvalidInput, "generator row has the wrong length");
        for (const auto& x : row) entries.push_back(cyc_from_json(x));
      }
    } else {
      require(m.size() == n * n, ErrorKind::InvalidInput, "generator must have n^2 entries");
      for (const auto& x : m) entries.push_back(cyc_from_json(x));
    }
    all.push_back(std::move(entries));
  }
  Conductor cond = conductor.value_or(1);
  if (!conductor)
    for (const auto& e : all) cond = common_conductor(e, cond);
  for (const auto& entries : all) {
    CycMatrix mat(n, n);
    for (std::size_t e = 0; e < n * n; ++e) {
      require(cond % entries[e].conductor() == 0, ErrorKind::InvalidInput,
              "entry conductor does not divide the group conductor");
      mat(e / n, e % n) = entries[e].lift(cond);
    }
    g.generators.push_back(std::move(mat));
  }
  return g;
}

inline Json group_to_json(const std::vector<CycMatrix>& generators) {
  const Conductor m = [&] {
    Conductor c = 1;
    for (const auto& g : generators) c = common_conductor(g.data(), c);
    return c;
  }();
  Json gens = Json::array();
  for (const auto& g : generators) gens.push_back(to_json(lift(g, m)));
  return Json{{"conductor", m}, {"dimension", generators.empty() ? 0 : generators.front().rows()}, {"generators", gens}};
}

/// ambient: Q-basis of Q Lambda in reduced echelon form; Lambda = (1/denominator) * basis * ambient.
inline Json to_json(const ZLattice& l) {
  Json out{{"dimension", l.dimension()}, {"conductor", l.conductor()}, {"rank", l.rank()}};
  const RatMatrix rows = l.rational_rows();
  const auto ech = rref(rows);
  Json ambient = Json::array();
  const std::vector<std::size_t>& pivots = ech.pivots;
  const std::size_t rk = pivots.size();
  const std::size_t phi = euler_phi(l.conductor());
  for (std::size_t i = 0; i < rk; ++i) {
    CycVec v;
    for (std::size_t e = 0; e < l.dimension(); ++e) {
      const RatVec row = ech.reduced.row_vector(i);
      std::vector<Rational> c(row.begin() + static_cast<std::ptrdiff_t>(e * phi),
                              row.begin() + static_cast<std::ptrdiff_t>((e + 1) * phi));
      v.push_back(CycNum::from_coefficients(l.conductor(), std::move(c)));
    }
    ambient.push_back(to_json(v));
  }
  RatMatrix coords(rows.rows(), rk);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t k = 0; k < rk; ++k) coords(i, k) = rows(i, pivots[k]);
  const Integer d = common_denominator(coords);
  out["ambient"] = ambient;
  out["basis"] = to_json(scale_to_integers(coords, d));
  out["denominator"] = d.get_str();
  return out;
}

/// "3/4", "i", "-i", "zeta7", "zeta12^5", "sqrt-3", or a JSON scalar.
inline CycNum parse_cycnum(const std::string& text) {
  require(!text.empty(), ErrorKind::InvalidInput, "empty scalar");
  if (text.front() == '{' || text.front() == '[') return cyc_from_json(Json::parse(text, nullptr, true));
  std::string s = text;
  bool negate = false;
  if (s.front() == '-' && s.size() > 1 && !std::isdigit(static_cast<unsigned char>(s[1]))) {
    negate = true;
    s.erase(0, 1);
  }
  auto number = [&](const std::string& t) -> long {
    require(!t.empty() && t.find_first_not_of("-0123456789") == std::string::npos, ErrorKind::InvalidInput,
            "cannot parse scalar '" + text + "'");
    return std::stol(t);
  };
  CycNum out;
  if (s == "i") {
    out = CycNum::zeta(4);
  } else if (s.rfind("zeta", 0) == 0) {
    const auto caret = s.find('^');
    const long n = number(s.substr(4, caret == std::string::npos ? std::string::npos : caret - 4));
    require(n >= 1, ErrorKind::InvalidInput, "zeta order must be positive");
    const long k = caret == std::string::npos ? 1 : number(s.substr(caret + 1));
    out = CycNum::zeta(static_cast<Conductor>(n), k);
  } else if (s.rfind("sqrt", 0) == 0) {
    out = sqrt_integer(number(s.substr(4)));
  } else {
    out = CycNum(parse_rational(s));
  }
  return negate ? -out : out;
}

}  // namespace torlat
