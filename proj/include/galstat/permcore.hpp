#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "galstat/numeric.hpp"
#include "galstat/polyarith.hpp"

namespace galstat {

// Permutation of {1,...,n}. Ordering is lexicographic on the image sequence,
// which fixes the canonical representative choices everywhere downstream.
class Permutation {
 public:
  // images[i] is the image of point i+1 (1-based values).
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree);

  // Disjoint-cycle notation, e.g. "(1,2,3,8)(4,5,6,7)" or "(1 2 3 4)".
  // "()" denotes the identity. Points must lie in 1..degree and may appear
  // at most once.
  static Permutation parse_cycles(const std::string& text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_[point - 1]; }
  const std::vector<int>& images() const { return images_; }

  // Function composition: (a * b)(x) = a(b(x)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  Permutation power(long e) const;

  CycleType cycle_type() const;
  long order() const;
  std::string to_cycle_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

struct ConjClass {
  Permutation representative;  // lexicographically minimal member
  long size = 0;
  CycleType cycle_type;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

// Fully enumerated permutation group with conjugacy-class data.
// Immutable after construction; all queries are read-only.
class PermGroup {
 public:
  // Breadth-first closure of the generators under multiplication.
  // Throws GroupTooLargeError when the closure would exceed `cap`.
  static PermGroup close(std::vector<Permutation> generators, std::string name = "",
                         std::size_t cap = kDefaultEnumerationCap);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  long order() const { return static_cast<long>(elements_.size()); }
  const std::vector<Permutation>& generators() const { return generators_; }

  // Lexicographically sorted element list; indices into it are stable ids.
  const std::vector<Permutation>& elements() const { return elements_; }
  int element_index(const Permutation& g) const;

  // Classes sorted by (cycle type lex, size, representative lex).
  const std::vector<ConjClass>& classes() const { return classes_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_of(const Permutation& g) const;
  int class_of_index(int element_index) const { return class_by_element_[element_index]; }

  // Exact class weights |C_k| / |G|, summing to 1.
  std::vector<Rat> haar_weights() const;

  // Index of the class containing rep(k)^e.
  int power_map(int class_index, long e) const;

  // Per-class cycle types: the induced map into the classes of Sym_n.
  std::vector<CycleType> class_map_to_sym() const;

  // Least common multiple of the element orders.
  long exponent() const;

 private:
  PermGroup() = default;

  std::string name_;
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<int> class_by_element_;
  std::vector<ConjClass> classes_;
};

// Group file: { "name": string, "degree": n, "generators": ["(1,2)...", ...] }.
PermGroup load_group_json(const std::string& json_text, std::size_t cap = kDefaultEnumerationCap);

// Import format for groups too large to enumerate:
// { "name", "degree", "order", "classes": [{ "cycle_type", "size", "svector"? }] }.
// Only class-level data is retained; svector entries are optional and, when
// present, must have length degree - 1.
struct ImportedClass {
  CycleType cycle_type;
  Int size;
  std::vector<Int> svector;  // empty when not supplied
};

struct ImportedGroup {
  std::string name;
  int degree = 0;
  Int order;
  std::vector<ImportedClass> classes;

  std::vector<Rat> haar_weights() const;
};

ImportedGroup parse_imported_group(const std::string& json_text);

}  // namespace galstat
