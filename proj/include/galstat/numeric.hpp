#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace galstat {

// Exact arithmetic types used throughout. All statistics are accumulated as
// exact integers/rationals; floating point appears only in final norm reports.
using Int = mpz_class;
using Rat = mpq_class;

inline Int make_int(long v) { return Int(v); }

inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat canon(Rat r) {
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

// Rationals are rendered as "num/den" with the denominator omitted when 1.
inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline double to_double(const Rat& v) { return v.get_d(); }

// Nearest-integer rounding of an exact rational. Exact half-integers and
// values within `fuzz` of one are reported as ambiguous by the caller.
struct RoundedInt {
  Int value;
  bool ambiguous;
};

inline RoundedInt round_nearest(const Rat& v, double fuzz = 1e-9) {
  Rat c = v;
  c.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
  Rat frac = c - Rat(fl);  // in [0, 1)
  bool up = frac >= make_rat(1, 2);
  double d = std::abs(frac.get_d() - 0.5);
  return RoundedInt{up ? Int(fl + 1) : fl, d < fuzz};
}

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RamifiedPrimeError : std::runtime_error {
  explicit RamifiedPrimeError(std::uint64_t p, const std::string& why)
      : std::runtime_error("prime " + std::to_string(p) + " is ramified: " + why), prime(p) {}
  std::uint64_t prime;
};

struct GroupTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace galstat
