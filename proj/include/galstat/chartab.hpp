#pragma once

#include <string>
#include <vector>

#include "galstat/cyclotomic.hpp"
#include "galstat/numeric.hpp"
#include "galstat/permcore.hpp"

namespace galstat {

struct TableClass {
  CycleType cycle_type;
  Int size;
};

// Exact character table: h irreducible characters by h conjugacy classes.
// Tables produced by character_table() are always orthogonality-verified and
// carry class power maps; imported tables may lack the power maps.
struct CharacterTable {
  std::string group_name;
  Int group_order;
  long exponent = 1;  // m: all values lie in Q(zeta_m)
  std::vector<TableClass> classes;
  std::vector<std::vector<Cyclotomic>> values;  // values[i][j] = chi_i(C_j)

  // power_classes[j][l] = index of the class of rep_j^l, for l in
  // 0..order(rep_j)-1. Empty when unavailable (some imports).
  std::vector<std::vector<int>> power_classes;

  int size() const { return static_cast<int>(classes.size()); }
  std::vector<Rat> weights() const;
  Int degree(int character_index) const;
  bool has_power_maps() const { return !power_classes.empty(); }

  // Class index of C_j raised to the e-th power (requires power maps).
  int class_power(int class_index, long e) const;
};

// Rational character table: one row per Galois orbit of irreducibles (the
// orbit sum), one column per fused class (orbit of classes under the power
// maps). Entries are integers; the Gram matrix of the rows under the fused
// Haar weights is diag(orbit sizes).
struct RationalClass {
  CycleType cycle_type;
  Int size;                  // summed over the fused classes
  std::vector<int> members;  // original class indices (empty for imports)
};

struct RationalCharacterTable {
  std::string group_name;
  Int group_order;
  std::vector<RationalClass> classes;
  std::vector<std::vector<Int>> rows;  // r x r
  std::vector<int> orbit_sizes;        // <chi, chi> per row

  int rank() const { return static_cast<int>(rows.size()); }
  std::vector<Rat> weights() const;
};

// Computes the full irreducible character table by the class-algebra method:
// structure constants, simultaneous eigenvectors over a prime field
// F_q (q = 1 mod exponent, q > 2 sqrt|G|), and lifting of eigenvalue
// multiplicities to exact cyclotomic values. The result is verified
// (A D A* = I exactly) before being returned; failure to verify is a hard
// internal error, never a silently wrong table.
CharacterTable character_table(const PermGroup& G);

// Exact Haar-weighted row orthogonality A D A* = I.
bool verify_orthogonality(const CharacterTable& T);

// Exact column orthogonality: sum_i chi_i(C_j) conj(chi_i(C_k)) =
// delta_jk |G| / |C_j|.
bool verify_column_orthogonality(const CharacterTable& T);

// Partition of character indices under chi -> chi^{sigma_k},
// chi^{sigma_k}(C) = chi(C^k), for all k coprime to the exponent. Computed
// through the class power maps; requires has_power_maps().
std::vector<std::vector<int>> galois_orbits(const CharacterTable& T);

RationalCharacterTable rational_character_table(const CharacterTable& T);

// JSON import/export. Cyclotomic tables use value strings in "a+b*z^k"
// syntax with z = zeta_exponent; rational tables ("rational": true) use
// plain integer rows. Import re-verifies orthogonality and rejects tables
// that fail (reporting the largest numeric deviation).
std::string export_table_json(const CharacterTable& T);
std::string export_rational_table_json(const RationalCharacterTable& T);

struct ImportedTable {
  bool is_rational = false;
  CharacterTable cyclotomic;       // valid when !is_rational
  RationalCharacterTable rational;  // valid when is_rational
};

ImportedTable import_table_json(const std::string& json_text);

// True when the tables agree up to a simultaneous permutation of rows and a
// weight-preserving permutation of columns (the class orderings of two
// isomorphic groups need not match).
bool tables_match_up_to_permutation(const CharacterTable& A, const CharacterTable& B);

}  // namespace galstat
