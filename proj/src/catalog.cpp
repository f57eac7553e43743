#include "galstat/catalog.hpp"

#include <stdexcept>

namespace galstat {

namespace {

struct CatalogEntry {
  const char* name;
  int degree;
  std::vector<const char*> generators;
};

// PSL2_7 acts on the projective line over the 7-element field (points
// 0..6 -> 1..7, infinity -> 8) through x -> x+1 and x -> -1/x; PGL2_7 adds
// the multiplier x -> 3x. AGL3_2 acts on the 8 vectors of a 3-dimensional
// binary space (point 1 + v1 + 2 v2 + 4 v3) through a translation, a
// coordinate rotation, and a transvection.
const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = {
      {"Sym4", 4, {"(1,2)", "(1,2,3,4)"}},
      {"A4", 4, {"(1,2,3)", "(2,3,4)"}},
      {"D4", 4, {"(1,2,3,4)", "(1,3)"}},
      {"C4", 4, {"(1,2,3,4)"}},
      {"V4", 4, {"(1,2)(3,4)", "(1,3)(2,4)"}},
      {"D4x8", 8, {"(1,8)(2,7)(3,4)(5,6)", "(1,2)(3,5)(4,6)(7,8)", "(1,6)(2,4)(3,8)(5,7)"}},
      {"Q8", 8, {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"}},
      {"T8_10", 8, {"(1,2,3,8)(4,5,6,7)", "(1,5)(3,7)"}},
      {"T8_11", 8, {"(1,3,5,7)(2,4,6,8)", "(1,4,5,8)(2,3,6,7)", "(1,5)(3,7)"}},
      {"A5x5", 5, {"(1,2,3,4,5)", "(3,4,5)"}},
      {"A5x6", 6, {"(1,2,3,4,5)", "(1,6)(2,5)"}},
      {"Sym8", 8, {"(1,2)", "(1,2,3,4,5,6,7,8)"}},
      {"Alt8", 8, {"(1,2,3)", "(2,3,4,5,6,7,8)"}},
      {"PGL2_7", 8, {"(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)", "(2,4,3,7,5,6)"}},
      {"PSL2_7", 8, {"(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"}},
      {"AGL3_2", 8, {"(1,2)(3,4)(5,6)(7,8)", "(2,3,5)(4,7,6)", "(3,4)(7,8)"}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CatalogEntry& e : entries()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool catalog_has(const std::string& name) {
  for (const CatalogEntry& e : entries()) {
    if (name == e.name) return true;
  }
  return false;
}

std::vector<std::string> catalog_names_for_degree(int degree) {
  std::vector<std::string> out;
  for (const CatalogEntry& e : entries()) {
    if (e.degree == degree) out.emplace_back(e.name);
  }
  return out;
}

PermGroup catalog_group(const std::string& name) {
  for (const CatalogEntry& e : entries()) {
    if (name != e.name) continue;
    std::vector<Permutation> generators;
    for (const char* g : e.generators) {
      generators.push_back(Permutation::parse_cycles(g, e.degree));
    }
    return PermGroup::close(std::move(generators), e.name);
  }
  throw std::invalid_argument("unknown catalog group: " + name +
                              " (see the catalog command for available names)");
}

}  // namespace galstat
