#pragma once

#include <cstdint>

namespace galstat {

// 64-bit modular arithmetic with 128-bit intermediates.

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m for gcd(a, m) = 1; throws std::invalid_argument otherwise.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Smallest prime strictly greater than n.
std::uint64_t next_prime_u64(std::uint64_t n);

}  // namespace galstat
