#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ordlab/arith.hpp"

namespace ordlab {

// Primes p in [lo, hi] (both inclusive) with p = residue (mod modulus).
// modulus = 1 disables the progression filter.
struct PrimeRange {
  u64 lo = 2;
  u64 hi = 2;
  u64 modulus = 1;
  u64 residue = 0;

  // Throws DomainError unless 2 <= lo < hi < 2^62, hi - lo <= 2^34,
  // residue < modulus and gcd(residue, modulus) = 1 when modulus > 1.
  void validate() const;
};

inline constexpr u64 kMaxRangeSpan = u64{1} << 34;
inline constexpr u64 kMaxPrime = u64{1} << 62;

// Streams the primes of the range in ascending order.
void for_each_prime(const PrimeRange& range, const std::function<void(u64)>& visit);

// Same primes, materialized. Segments are sieved by up to `workers` threads
// and merged in order, so the result does not depend on the worker count.
std::vector<u64> primes_in_range(const PrimeRange& range, unsigned workers = 1);

// Least prime strictly greater than n, 2 <= n < 2^62.
u64 next_prime_above(u64 n);

}  // namespace ordlab
