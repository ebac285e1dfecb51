#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "ordlab/arith.hpp"
#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

constexpr std::array<u64, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Sinclair's base set, deterministic below 2^64.
constexpr std::array<u64, 7> kWitnesses = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod_u(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBatch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      // batch overshot; replay one step at a time
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](u64 a) { return strong_probable_prime(n, a, d, s); });
}

FactoredInteger factorize(u64 n) {
  if (n < 2) throw DomainError("factorize: n must be >= 2, got " + std::to_string(n));
  if (n >= (u64{1} << 63)) throw DomainError("factorize: n must be < 2^63");
  std::map<u64, unsigned> found;
  u64 rest = n;
  for (u64 p = 2; p < 1000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      rest /= p;
      ++found[p];
    }
  }
  factor_into(rest, found);
  std::vector<PrimePower> factors;
  factors.reserve(found.size());
  for (auto [p, e] : found) factors.push_back({p, e});
  return FactoredInteger(n, std::move(factors));
}

FactoredInteger factor_or_one(u64 n) { return n == 1 ? FactoredInteger{} : factorize(n); }

}  // namespace ordlab
