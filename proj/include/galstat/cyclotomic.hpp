#pragma once

#include <complex>
#include <string>
#include <vector>

#include "galstat/numeric.hpp"

namespace galstat {

// The m-th cyclotomic polynomial, ascending integer coefficients (monic,
// degree phi(m)). Results are cached; safe for concurrent callers.
const std::vector<Int>& cyclotomic_polynomial(int m);

int euler_phi(int m);

// Exact element of Q(zeta_m) over the power basis 1, z, ..., z^{phi(m)-1},
// reduced modulo the m-th cyclotomic polynomial. Values that turn out to be
// rational are normalized to order 1; otherwise the order is whatever the
// value was constructed with, and mixed-order arithmetic promotes to the
// least common multiple.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coords_(1, Rat(0)) {}
  explicit Cyclotomic(Rat value);
  explicit Cyclotomic(long value) : Cyclotomic(Rat(value)) {}

  // Interprets poly_coeffs as a polynomial in zeta_m (degree < m) and
  // reduces it.
  Cyclotomic(int order, std::vector<Rat> poly_coeffs);

  static Cyclotomic root_of_unity(int order, long exponent);

  // Parses "a+b*z^k" syntax where z denotes zeta_order.
  static Cyclotomic parse(const std::string& text, int order);

  int order() const { return order_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const { return order_ == 1; }
  // Throws std::logic_error when the value is irrational.
  Rat rational_value() const;

  Cyclotomic promote(int new_order) const;  // order() must divide new_order

  Cyclotomic operator+(const Cyclotomic& other) const;
  Cyclotomic operator-(const Cyclotomic& other) const;
  Cyclotomic operator*(const Cyclotomic& other) const;
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& other) { return *this = *this + other; }

  // Complex conjugation z -> z^{-1}.
  Cyclotomic conj() const;
  // The automorphism z -> z^k for gcd(k, order) = 1.
  Cyclotomic galois(long k) const;

  bool operator==(const Cyclotomic& other) const;
  bool operator!=(const Cyclotomic& other) const { return !(*this == other); }

  // Deterministic total order used for canonical row sorting: compares
  // (order, coordinates lexicographically).
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;
  std::complex<double> approx() const;

 private:
  void normalize();

  int order_;
  std::vector<Rat> coords_;
};

}  // namespace galstat
