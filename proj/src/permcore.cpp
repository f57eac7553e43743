#include "galstat/permcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace galstat {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n == 0) throw ParseError("permutation must have positive degree");
  std::vector<bool> seen(n, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v - 1]) throw ParseError("permutation images must be a bijection of 1..n");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  if (degree < 1) throw ParseError("degree must be at least 1");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < n) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < n && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError("expected point number in cycle notation");
      }
      int value = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > degree) throw ParseError("cycle point exceeds degree");
        ++i;
      }
      if (value < 1) throw ParseError("cycle points are 1-based");
      if (used[value - 1]) throw ParseError("point repeated in cycle notation");
      used[value - 1] = true;
      cycle.push_back(value);
      skip_ws();
      if (i < n && (text[i] == ',' || text[i] == ' ')) {
        ++i;
        skip_ws();
      }
    }
    if (i >= n) throw ParseError("unterminated cycle");
    ++i;  // ')'
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (degree() != other.degree()) throw std::invalid_argument("degree mismatch in composition");
  std::vector<int> images(degree());
  for (int x = 1; x <= degree(); ++x) images[x - 1] = apply(other.apply(x));
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(degree());
  for (int x = 1; x <= degree(); ++x) images[apply(x) - 1] = x;
  return Permutation(std::move(images));
}

Permutation Permutation::power(long e) const {
  const long n = order();
  e %= n;
  if (e < 0) e += n;
  Permutation result = identity(degree());
  Permutation base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

CycleType Permutation::cycle_type() const {
  std::vector<bool> seen(degree(), false);
  CycleType parts;
  for (int start = 1; start <= degree(); ++start) {
    if (seen[start - 1]) continue;
    int len = 0;
    int x = start;
    do {
      seen[x - 1] = true;
      x = apply(x);
      ++len;
    } while (x != start);
    parts.push_back(len);
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

long Permutation::order() const {
  long result = 1;
  for (int part : cycle_type()) result = std::lcm(result, static_cast<long>(part));
  return result;
}

std::string Permutation::to_cycle_string() const {
  std::vector<bool> seen(degree(), false);
  std::string out;
  for (int start = 1; start <= degree(); ++start) {
    if (seen[start - 1]) continue;
    if (apply(start) == start) {
      seen[start - 1] = true;
      continue;
    }
    out += '(';
    int x = start;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(x);
      seen[x - 1] = true;
      x = apply(x);
      first = false;
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

PermGroup PermGroup::close(std::vector<Permutation> generators, std::string name, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("at least one generator is required");
  const int degree = generators[0].degree();
  for (const Permutation& g : generators) {
    if (g.degree() != degree) throw ParseError("generators must share one degree");
  }

  std::set<std::vector<int>> seen;
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  seen.insert(frontier[0].images());
  std::vector<Permutation> elements = frontier;
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& w : frontier) {
      for (const Permutation& g : generators) {
        Permutation candidate = w * g;
        if (seen.insert(candidate.images()).second) {
          if (seen.size() > cap) {
            throw GroupTooLargeError(
                "group enumeration exceeded the cap of " + std::to_string(cap) +
                " elements; supply class data via the import format instead");
          }
          elements.push_back(candidate);
          next.push_back(std::move(candidate));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(elements.begin(), elements.end());

  PermGroup G;
  G.name_ = std::move(name);
  G.degree_ = degree;
  G.generators_ = std::move(generators);
  G.elements_ = std::move(elements);

  // Conjugacy classes as orbits under conjugation by the generators. The
  // element list is scanned in sorted order, so each orbit is first entered
  // at its lexicographically minimal member.
  const int order = static_cast<int>(G.elements_.size());
  G.class_by_element_.assign(order, -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < order; ++i) {
    if (G.class_by_element_[i] >= 0) continue;
    const int cls = static_cast<int>(orbits.size());
    std::vector<int> orbit{i};
    G.class_by_element_[i] = cls;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const Permutation& g = G.elements_[orbit[head]];
      for (const Permutation& x : G.generators_) {
        int j = G.element_index(x * g * x.inverse());
        if (G.class_by_element_[j] < 0) {
          G.class_by_element_[j] = cls;
          orbit.push_back(j);
        }
      }
    }
    orbits.push_back(std::move(orbit));
  }

  std::vector<int> class_order(orbits.size());
  std::iota(class_order.begin(), class_order.end(), 0);
  std::vector<CycleType> types(orbits.size());
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    types[c] = G.elements_[orbits[c][0]].cycle_type();
  }
  std::sort(class_order.begin(), class_order.end(), [&](int a, int b) {
    if (types[a] != types[b]) return types[a] < types[b];
    if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
    return G.elements_[orbits[a][0]] < G.elements_[orbits[b][0]];
  });

  std::vector<int> new_index(orbits.size());
  for (std::size_t k = 0; k < class_order.size(); ++k) {
    new_index[class_order[k]] = static_cast<int>(k);
    const auto& orbit = orbits[class_order[k]];
    G.classes_.push_back(ConjClass{G.elements_[orbit[0]], static_cast<long>(orbit.size()),
                                   types[class_order[k]]});
  }
  for (int& c : G.class_by_element_) c = new_index[c];
  return G;
}

int PermGroup::element_index(const Permutation& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || !(*it == g)) {
    throw std::invalid_argument("permutation is not an element of the group");
  }
  return static_cast<int>(it - elements_.begin());
}

int PermGroup::class_of(const Permutation& g) const { return class_by_element_[element_index(g)]; }

std::vector<Rat> PermGroup::haar_weights() const {
  std::vector<Rat> weights;
  weights.reserve(classes_.size());
  for (const ConjClass& c : classes_) weights.push_back(make_rat(c.size, order()));
  return weights;
}

int PermGroup::power_map(int class_index, long e) const {
  if (class_index < 0 || class_index >= class_count()) {
    throw std::invalid_argument("class index out of range");
  }
  return class_of(classes_[class_index].representative.power(e));
}

std::vector<CycleType> PermGroup::class_map_to_sym() const {
  std::vector<CycleType> types;
  types.reserve(classes_.size());
  for (const ConjClass& c : classes_) types.push_back(c.cycle_type);
  return types;
}

long PermGroup::exponent() const {
  long result = 1;
  for (const ConjClass& c : classes_) result = std::lcm(result, c.representative.order());
  return result;
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

Int json_to_int(const nlohmann::json& v, const char* what) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError(std::string("invalid integer for ") + what + ": " + v.get<std::string>());
    }
  }
  throw ParseError(std::string(what) + " must be an integer (or integer string)");
}

}  // namespace

PermGroup load_group_json(const std::string& json_text, std::size_t cap) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid group JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("group JSON must be an object");
  std::string name = require_field(doc, "name").get<std::string>();
  int degree = require_field(doc, "degree").get<int>();
  if (degree < 1) throw ParseError("degree must be at least 1");
  const auto& gens = require_field(doc, "generators");
  if (!gens.is_array() || gens.empty()) throw ParseError("generators must be a nonempty array");
  std::vector<Permutation> generators;
  for (const auto& g : gens) {
    if (!g.is_string()) throw ParseError("generators must be cycle-notation strings");
    generators.push_back(Permutation::parse_cycles(g.get<std::string>(), degree));
  }
  return PermGroup::close(std::move(generators), std::move(name), cap);
}

std::vector<Rat> ImportedGroup::haar_weights() const {
  std::vector<Rat> weights;
  weights.reserve(classes.size());
  for (const ImportedClass& c : classes) {
    Rat w(c.size, order);
    w.canonicalize();
    weights.push_back(w);
  }
  return weights;
}

ImportedGroup parse_imported_group(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid import JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("import JSON must be an object");

  ImportedGroup G;
  G.name = require_field(doc, "name").get<std::string>();
  G.degree = require_field(doc, "degree").get<int>();
  if (G.degree < 1) throw ParseError("degree must be at least 1");
  G.order = json_to_int(require_field(doc, "order"), "order");
  if (G.order < 1) throw ParseError("order must be positive");

  const auto& classes = require_field(doc, "classes");
  if (!classes.is_array() || classes.empty()) throw ParseError("classes must be a nonempty array");
  Int size_sum(0);
  for (const auto& entry : classes) {
    ImportedClass c;
    const auto& type = require_field(entry, "cycle_type");
    if (!type.is_array() || type.empty()) throw ParseError("cycle_type must be a nonempty array");
    int part_sum = 0;
    for (const auto& part : type) {
      int d = part.get<int>();
      if (d < 1) throw ParseError("cycle type parts must be positive");
      c.cycle_type.push_back(d);
      part_sum += d;
    }
    std::sort(c.cycle_type.begin(), c.cycle_type.end());
    if (part_sum != G.degree) throw ParseError("cycle type parts must sum to the degree");
    c.size = json_to_int(require_field(entry, "size"), "class size");
    if (c.size < 1) throw ParseError("class sizes must be positive");
    size_sum += c.size;
    if (entry.contains("svector")) {
      const auto& sv = entry["svector"];
      if (!sv.is_array()) throw ParseError("svector must be an array");
      for (const auto& v : sv) c.svector.push_back(json_to_int(v, "svector entry"));
      if (static_cast<int>(c.svector.size()) != G.degree - 1) {
        throw ParseError("svector must have length degree - 1");
      }
    }
    G.classes.push_back(std::move(c));
  }
  if (size_sum != G.order) throw ParseError("class sizes must sum to the group order");
  return G;
}

}  // namespace galstat
