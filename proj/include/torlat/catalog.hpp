#pragma once

// Built-in groups. Matrices act on column vectors.

#include <string>
#include <vector>

#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/group.hpp"

namespace torlat {

enum class QuaternionPreset { None, Generic, I };

struct CatalogEntry {
  std::string name;
  std::string source;
  std::string description;
  std::size_t dimension = 0;
  std::vector<CycMatrix> generators;
  QuaternionPreset quaternion = QuaternionPreset::None;
};

namespace detail {

inline CycMatrix mat2(CycNum a, CycNum b, CycNum c, CycNum d) {
  return CycMatrix::from_rows({{std::move(a), std::move(b)}, {std::move(c), std::move(d)}});
}

inline CycMatrix mat3(std::vector<std::vector<int>> rows) {
  std::vector<CycVec> r;
  for (const auto& row : rows) {
    CycVec v;
    for (int x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return CycMatrix::from_rows(r);
}

inline std::vector<CycMatrix> q8_generators() {
  const CycNum i = CycNum::zeta(4);
  return {mat2(i, 0, 0, -i), mat2(0, 1, -1, 0)};
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  using detail::mat2;
  using detail::mat3;
  const CycNum w = CycNum::zeta(3);
  std::vector<CatalogEntry> out;
  out.push_back({"S3-standard", "doubly transitive permutation group, n = 2",
                 "S3 on functions with zero sum, basis e1-e2, e2-e3", 2,
                 {mat2(-1, 1, 0, 1), mat2(0, -1, 1, -1)}});
  out.push_back({"S4-standard", "doubly transitive permutation group, n = 3",
                 "S4 on functions with zero sum, simple-root basis", 3,
                 {mat3({{-1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), mat3({{1, 0, 0}, {1, -1, 1}, {0, 0, 1}}),
                  mat3({{1, 0, 0}, {0, 1, 0}, {0, 1, -1}})}});
  out.push_back({"Weyl-A2", "real reflection group", "W(A2) generated by its two simple reflections", 2,
                 {mat2(-1, 1, 0, 1), mat2(1, 0, 1, -1)}});
  out.push_back({"Weyl-B2", "real reflection group", "W(B2) generated by reflections in e1 and e1-e2", 2,
                 {mat2(-1, 0, 0, 1), mat2(0, 1, 1, 0)}});
  out.push_back({"G4", "complex reflection group (Shephard-Todd 4)",
                 "two reflections of order 3 over Q(zeta3)", 2,
                 {mat2(w, 1, 0, 1), mat2(1, 0, -w, w)}});
  out.push_back({"Q8", "quaternion group, 2-dimensional matrix form", "quaternion group of order 8", 2,
                 detail::q8_generators()});
  out.push_back({"C3-zeta3", "cyclic group", "C3 acting on C by zeta3", 1, {CycMatrix(1, 1, CycNum::zeta(3))}});
  out.push_back({"C4-i", "cyclic group", "C4 acting on C by i", 1, {CycMatrix(1, 1, CycNum::zeta(4))}});
  out.push_back({"C5-zeta5", "cyclic group", "C5 acting on C by zeta5", 1, {CycMatrix(1, 1, CycNum::zeta(5))}});
  CatalogEntry generic{"example-non-generic", "quaternion torus H/Lipschitz with generic complex structure",
                       "Q8 acting on (-1,-1) by left multiplication, i acting as right multiplication "
                       "by c = (sqrt3/3) i + (sqrt6/3) j",
                       2, detail::q8_generators(), QuaternionPreset::Generic};
  out.push_back(generic);
  CatalogEntry rational{"example-non-i", "quaternion torus H/Lipschitz with complex structure c = i",
                        "Q8 acting on (-1,-1) by left multiplication, i acting as right multiplication by i", 2,
                        detail::q8_generators(), QuaternionPreset::I};
  out.push_back(rational);
  return out;
}

inline CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  fail(ErrorKind::InvalidInput, "unknown catalog group '" + name + "'");
}

inline GroupRep catalog_group(const std::string& name) { return close_group(catalog_entry(name).generators); }

}  // namespace torlat
