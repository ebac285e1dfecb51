#include <algorithm>
#include <doctest.h>
#include <numeric>

#include "oracles.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/primes.hpp"

using namespace ordlab;

TEST_CASE("small ranges and progressions") {
  CHECK(primes_in_range({10, 20}) == std::vector<u64>{11, 13, 17, 19});
  CHECK(primes_in_range({10, 20, 4, 1}) == std::vector<u64>{13, 17});
  CHECK(primes_in_range({2, 10}) == std::vector<u64>{2, 3, 5, 7});
  CHECK(primes_in_range({24, 28}).empty());
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(primes_in_range({20, 10}), DomainError);
  CHECK_THROWS_AS(primes_in_range({1, 10}), DomainError);
  CHECK_THROWS_AS(primes_in_range({10, 20, 4, 2}), DomainError);
  CHECK_THROWS_AS(primes_in_range({10, 20, 4, 5}), DomainError);
  CHECK_THROWS_AS(primes_in_range({10, 10 + kMaxRangeSpan + 1}), DomainError);
}

TEST_CASE("[2, 10^5] matches an Eratosthenes oracle element by element") {
  const auto expected = oracle::sieve(100000);
  CHECK(primes_in_range({2, 100000}) == expected);
  std::vector<u64> streamed;
  for_each_prime({2, 100000}, [&](u64 p) { streamed.push_back(p); });
  CHECK(streamed == expected);
}

TEST_CASE("prime count on [10^6, 2*10^6]") {
  const auto oracle_primes = oracle::sieve(2'000'000);
  const auto oracle_count = std::count_if(oracle_primes.begin(), oracle_primes.end(), [](u64 p) { return p >= 1'000'000; });
  CHECK(oracle_count == 70435);
  const auto one = primes_in_range({1'000'000, 2'000'000}, 1);
  CHECK(one.size() == 70435);
  CHECK(primes_in_range({1'000'000, 2'000'000}, 3) == one);
  CHECK(std::is_sorted(one.begin(), one.end()));
  CHECK(std::adjacent_find(one.begin(), one.end()) == one.end());
}

TEST_CASE("progression counts partition the primes coprime to the modulus") {
  for (u64 m : {3, 4, 6, 12}) {
    const auto all = primes_in_range({10000, 100000});
    const auto coprime = std::count_if(all.begin(), all.end(), [&](u64 p) { return std::gcd(p, m) == 1; });
    std::size_t total = 0;
    for (u64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const auto part = primes_in_range({10000, 100000, m, a});
      for (u64 p : part) CHECK(p % m == a);
      total += part.size();
    }
    CHECK(total == static_cast<std::size_t>(coprime));
  }
}

TEST_CASE("large range near 2^40 uses the same stream") {
  const u64 lo = (u64{1} << 40) - 2000, hi = (u64{1} << 40);
  std::vector<u64> expected;
  for (u64 n = lo; n <= hi; ++n) {
    if (oracle::is_prime(n)) expected.push_back(n);
  }
  CHECK(primes_in_range({lo, hi}, 2) == expected);
}

TEST_CASE("next_prime_above") {
  CHECK(next_prime_above(7) == 11);
  CHECK(next_prime_above(13) == 17);
  CHECK(next_prime_above(1'000'000) == 1'000'003);
  CHECK(next_prime_above(2) == 3);
  for (u64 n = 2; n < 3000; ++n) {
    u64 m = n + 1;
    while (!oracle::is_prime(m)) ++m;
    CHECK(next_prime_above(n) == m);
  }
  CHECK_THROWS_AS(next_prime_above(kMaxPrime), DomainError);
}
