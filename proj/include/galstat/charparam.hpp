#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galstat/chartab.hpp"
#include "galstat/numeric.hpp"
#include "galstat/permcore.hpp"

namespace galstat {

// Coefficient tuple of S(x) = prod_i (x^{d_i} - 1) / (x - 1) for a partition
// (d_1, ..., d_t) of n, written with alternating signs as
//   S(x) = x^{n-1} - s_1 x^{n-2} + s_2 x^{n-3} - ... + (-1)^{n-1} s_{n-1}.
// Conjugacy classes with equal cycle type share one point, so these
// coordinates parametrize factorization data rather than individual classes.
struct ClassPoint {
  int degree = 0;            // n
  std::vector<Int> svector;  // (s_1, ..., s_{n-1})

  bool operator==(const ClassPoint&) const = default;
};

ClassPoint s_vector(const CycleType& cycle_type);

// One ClassPoint per conjugacy class, in class order; and the deduplicated
// list in order of first occurrence.
std::vector<ClassPoint> class_points(const PermGroup& group);
std::vector<ClassPoint> distinct_class_points(const PermGroup& group);

// Exponent tuples are trimmed (no trailing zeros); entry i is the exponent of
// s_{i+1}. Tuples are kept graded, s_1-heavy first within a degree; this is
// also the pivot preference of the interpolation routines.
struct MonomialOrder {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Polynomial in Q[s_1, ..., s_{n-1}] in canonical form (no zero terms).
class SPolynomial {
 public:
  using TermMap = std::map<std::vector<int>, Rat, MonomialOrder>;

  SPolynomial() = default;  // the zero polynomial
  explicit SPolynomial(const Rat& constant);
  static SPolynomial variable(int index);  // s_index, 1-based

  // Text form like "s1^2 - s1 - 1/2*s2 - 1". Factors of a term may be
  // separated by '*' or juxtaposed ("4s2", "s1s3"); coefficients may be
  // integers or fractions. Throws ParseError on malformed input.
  static SPolynomial parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int max_variable() const;  // largest s-index used, 0 for constants
  const TermMap& terms() const { return terms_; }
  Rat coefficient(const std::vector<int>& exponents) const;

  SPolynomial operator-() const;
  SPolynomial operator+(const SPolynomial& other) const;
  SPolynomial operator-(const SPolynomial& other) const;
  SPolynomial operator*(const SPolynomial& other) const;
  SPolynomial operator*(const Rat& scale) const;
  SPolynomial operator/(const Rat& scale) const;
  bool operator==(const SPolynomial&) const = default;

  // Highest total degree first, s_1-heavy first within a degree,
  // e.g. "s1^2 - s1 - s2 - 1".
  std::string to_string() const;

 private:
  void add_term(std::vector<int> exponents, const Rat& coeff);

  TermMap terms_;
};

// Exact substitution. Throws std::out_of_range when the polynomial uses a
// variable beyond s_{n-1} of the point.
Rat evaluate(const SPolynomial& p, const ClassPoint& pt);

// Virtual character of a fixed group: exact rational values per conjugacy
// class, optionally with coordinates over the irreducible rows of its
// character table and an s-polynomial expression.
struct VirtualCharacter {
  std::vector<Rat> values;                // one entry per conjugacy class
  std::vector<Int> coords;                // over the irreducible rows; may be empty
  std::optional<SPolynomial> expression;  // s-parametrization when known

  // Value on the identity class (classes are sorted identity-first).
  Int degree() const;
};

struct KernelIdealBasis {
  std::vector<SPolynomial> generators;
  int degree_bound = 0;
};

// Least-degree s-polynomial reproducing the given per-class values, solved
// over monomial evaluations at the distinct class points with pivots chosen
// on the earliest monomials. Throws std::domain_error("not in restriction
// image") when two classes with the same cycle type carry different values,
// and std::domain_error("degree bound too small") when no polynomial of
// total degree <= degree_bound matches.
SPolynomial interpolate_character(const std::vector<Rat>& class_values, const PermGroup& group,
                                  int degree_bound = 2);

// Core form: points must be pairwise distinct, one target value each.
SPolynomial interpolate_at_points(const std::vector<ClassPoint>& points,
                                  const std::vector<Rat>& targets, int degree_bound);

// Basis of the polynomials of total degree <= degree_bound vanishing at every
// class point of the group. The generators list the relations that already
// hold on every cycle type of Sym_n (products of s_k s_{n-1} - s_{n-1-k} and
// s_{n-1}^2 - 1) first, followed by a reduced basis of the group-specific
// relations; each generator is monic in its leading monomial.
KernelIdealBasis kernel_ideal(const PermGroup& group, int degree_bound = 2);
KernelIdealBasis kernel_ideal_at_points(const std::vector<ClassPoint>& points, int degree_bound);

// Subtracts, for each generator in list order, the multiple cancelling the
// coefficient at that generator's leading monomial. For bases produced by
// kernel_ideal the result is zero exactly when p lies in their linear span.
SPolynomial reduce_modulo(const SPolynomial& p, const KernelIdealBasis& basis);

// For each class of the subgroup, the index of the class of `group`
// containing its representative. Throws std::invalid_argument when a
// representative does not lie in `group`.
std::vector<int> subgroup_class_map(const PermGroup& group, const PermGroup& subgroup);

// Branching matrix: row i gives the coordinates of the i-th irreducible of
// table_g restricted along class_map, over the irreducibles of table_h.
// Entries of a consistent class map are nonnegative integers; anything else
// raises std::domain_error.
std::vector<std::vector<Int>> restriction_matrix(const CharacterTable& table_g,
                                                 const CharacterTable& table_h,
                                                 const std::vector<int>& class_map);

// Number of distinct class points: the rank of the lattice of class
// functions obtained by restricting virtual characters of Sym_n.
int restriction_image_rank(const PermGroup& group);

// For the i-th distinct class point, the polynomial taking value `scale`
// (= |G| in the group form) on that point and 0 on the others, expressed on
// the earliest monomials that separate the points.
std::vector<SPolynomial> scaled_idempotents(const PermGroup& group);
std::vector<SPolynomial> scaled_idempotents(const std::vector<ClassPoint>& points,
                                            const Int& scale);

// Basis of the restriction-image lattice consisting of genuine characters,
// chosen greedily by smallest self-inner-product, ties broken by degree and
// then by coordinate vector. Every result carries values, coordinates over
// `table`, and an interpolated s-polynomial expression; the trivial
// character is always a member.
std::vector<VirtualCharacter> reduced_character_basis(const PermGroup& group,
                                                      const CharacterTable& table);

}  // namespace galstat
