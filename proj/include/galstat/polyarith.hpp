#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galstat/numeric.hpp"

namespace galstat {

// Multiset of factor degrees (ascending). For a polynomial reduced modulo an
// unramified prime these are the degrees of its irreducible factors; for a
// permutation they are the orbit sizes.
using CycleType = std::vector<int>;

// Formal-product rendering, e.g. (1,1,2,4) -> "1^2 2 4".
std::string format_cycle_type(const CycleType& parts);

// Dense univariate polynomial over Z, ascending coefficient order.
// Degree is at least 1 and the leading coefficient is nonzero.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<Int> ascending_coefficients);

  // Accepts either "x^4 + x + 1" style text (optional '*' between coefficient
  // and variable) or a JSON array of ascending coefficients.
  static IntPolynomial parse(const std::string& text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Int>& coefficients() const { return coeffs_; }
  const Int& leading() const { return coeffs_.back(); }

  std::string to_string() const;

  bool operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Int> coeffs_;
};

// Res(a, b), exact, via the subresultant polynomial remainder sequence.
Int resultant(const IntPolynomial& a, const IntPolynomial& b);

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
Int discriminant(const IntPolynomial& f);

// Degrees of the irreducible factors of f mod p (distinct-degree
// factorization; the factors themselves are never materialized).
// Throws RamifiedPrimeError when p divides lc(f) or f mod p has a repeated
// factor, and std::invalid_argument when p is not prime.
CycleType factorization_type(const IntPolynomial& f, std::uint64_t p);

// True iff gcd(f, f') is constant mod p. Throws RamifiedPrimeError when
// p | lc(f), std::invalid_argument when p is not prime.
bool is_squarefree_mod(const IntPolynomial& f, std::uint64_t p);

// Heuristic irreducibility certificate over Q: true when f is irreducible
// modulo some unramified prime, or when the factor-degree patterns at the
// first 20 unramified primes rule out every proper factor degree. A false
// return is inconclusive, not a disproof.
bool probably_irreducible(const IntPolynomial& f);

}  // namespace galstat
