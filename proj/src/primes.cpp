#include <cmath>
#include <numeric>

#include "ordlab/errors.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/primes.hpp"

namespace ordlab {

namespace {

// Odd numbers per segment; 2^18 bits = 32 KiB of sieve words.
constexpr u64 kSegmentOdds = u64{1} << 18;
// Above this sieving bound the range is scanned with Miller-Rabin instead.
constexpr u64 kMaxSieveBound = u64{1} << 25;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<u64> small_odd_primes(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> out;
  for (u64 i = 3; i <= limit; i += 2) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += 2 * i) composite[j] = true;
  }
  return out;
}

bool accepted(const PrimeRange& r, u64 p) { return r.modulus == 1 || p % r.modulus == r.residue; }

// Emits the primes in [lo, hi] in ascending order using the given odd base
// primes (which must cover sqrt(hi)).
void sieve_span(u64 lo, u64 hi, const std::vector<u64>& base, const PrimeRange& filter,
                const std::function<void(u64)>& visit) {
  if (lo <= 2 && 2 <= hi && accepted(filter, 2)) visit(2);
  u64 start = std::max<u64>(lo, 3) | 1;
  std::vector<std::uint64_t> bits((kSegmentOdds + 63) / 64);
  while (start <= hi) {
    const u64 odds = std::min(kSegmentOdds, (hi - start) / 2 + 1);
    const u64 last = start + 2 * (odds - 1);
    std::fill(bits.begin(), bits.end(), 0);
    for (u64 p : base) {
      if (p * p > last) break;
      u64 m = std::max(p * p, (start + p - 1) / p * p);
      if (m % 2 == 0) m += p;
      for (u64 i = (m - start) / 2; i < odds; i += p) bits[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    for (u64 i = 0; i < odds; ++i) {
      if (!(bits[i / 64] >> (i % 64) & 1)) {
        const u64 n = start + 2 * i;
        if (accepted(filter, n)) visit(n);
      }
    }
    if (last >= hi || last + 2 < last) break;
    start = last + 2;
  }
}

void scan_span(u64 lo, u64 hi, const PrimeRange& filter, const std::function<void(u64)>& visit) {
  for (u64 n = lo; n <= hi; ++n) {
    if (is_prime(n) && accepted(filter, n)) visit(n);
  }
}

}  // namespace

void PrimeRange::validate() const {
  if (lo < 2) throw DomainError("prime range: lo must be >= 2");
  if (hi <= lo) throw DomainError("prime range: hi must exceed lo");
  if (hi >= kMaxPrime) throw DomainError("prime range: hi must be < 2^62");
  if (hi - lo > kMaxRangeSpan) throw DomainError("prime range: span exceeds 2^34");
  if (modulus == 0) throw DomainError("prime range: modulus must be positive");
  if (residue >= modulus) throw DomainError("prime range: residue must be in [0, modulus)");
  if (modulus > 1 && std::gcd(residue, modulus) != 1) {
    throw DomainError("prime range: residue must be coprime to modulus");
  }
}

void for_each_prime(const PrimeRange& range, const std::function<void(u64)>& visit) {
  range.validate();
  const u64 bound = isqrt(range.hi);
  if (bound > kMaxSieveBound) {
    scan_span(range.lo, range.hi, range, visit);
    return;
  }
  sieve_span(range.lo, range.hi, small_odd_primes(bound), range, visit);
}

std::vector<u64> primes_in_range(const PrimeRange& range, unsigned workers) {
  range.validate();
  const u64 bound = isqrt(range.hi);
  const bool sieve = bound <= kMaxSieveBound;
  const std::vector<u64> base = sieve ? small_odd_primes(bound) : std::vector<u64>{};

  // Fixed-width chunks so the split does not depend on the worker count.
  const u64 chunk = 2 * kSegmentOdds * 8;
  const u64 chunks = (range.hi - range.lo) / chunk + 1;
  auto parts = parallel_map(chunks, workers, [&](std::size_t i) {
    const u64 lo = range.lo + i * chunk;
    const u64 hi = std::min(range.hi, lo + chunk - 1);
    std::vector<u64> found;
    auto push = [&](u64 p) { found.push_back(p); };
    if (sieve) {
      sieve_span(lo, hi, base, range, push);
    } else {
      scan_span(lo, hi, range, push);
    }
    return found;
  });
  std::vector<u64> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

u64 next_prime_above(u64 n) {
  if (n < 2 || n >= kMaxPrime) throw DomainError("next_prime_above: n must be in [2, 2^62)");
  u64 c = n + 1;
  if (c > 2 && c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

}  // namespace ordlab
