#pragma once

// Brute-force reference implementations shared by the unit tests. Nothing
// here calls into the library.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

inline std::vector<u64> sieve(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline u64 phi(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

inline int mu(u64 n) {
  int sign = 1;
  for (u64 f = 2; f <= n; ++f) {
    if (n % f) continue;
    n /= f;
    if (n % f == 0) return 0;
    sign = -sign;
  }
  return sign;
}

// Least k >= 1 with r^k = 1 mod n.
inline u64 order(u64 r, u64 n) {
  r %= n;
  u64 x = r, k = 1;
  while (x != 1 % n) {
    x = x * r % n;
    ++k;
  }
  return k;
}

inline u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  for (u64 i = 0; i < e; ++i) r = r * (b % m) % m;
  return r;
}

}  // namespace oracle
