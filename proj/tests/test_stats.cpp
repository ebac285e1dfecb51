#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/stats.hpp"

using namespace ordlab;

namespace {

// Exhaustive pair count over [1, p-1]^2.
u64 equal_pairs(u64 p) {
  u64 hits = 0;
  for (u64 a = 1; a < p; ++a) {
    for (u64 b = 1; b < p; ++b) hits += oracle::order(a, p) == oracle::order(b, p);
  }
  return hits;
}

double coprime_reference(u64 p) {
  u64 pairs = 0, hits = 0;
  for (u64 a = 2; a < p; ++a) {
    for (u64 b = 2; b < p; ++b) {
      if (std::gcd(a, b) != 1) continue;
      ++pairs;
      hits += oracle::order(a, p) == oracle::order(b, p);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("exact equal-order probability examples") {
  const auto three = equal_order_probability_exact(3);
  CHECK(three.alpha2_num == 1);
  CHECK(three.alpha2_den == 2);
  CHECK(three.phi_ratio == 0.5);
  const auto seven = equal_order_probability_exact(7);
  CHECK(seven.alpha2_num * 36 == 10 * seven.alpha2_den);
  CHECK(seven.alpha2 <= 1.0 / 3.0);
  const auto five = equal_order_probability_exact(5);
  CHECK(five.alpha2_num * 16 == 6 * five.alpha2_den);
  CHECK(five.phi_ratio == 0.5);
  CHECK_THROWS_AS(equal_order_probability_exact(9), DomainError);
  CHECK_THROWS_AS(equal_order_probability_exact(2), DomainError);
}

TEST_CASE("alpha2 matches exhaustive pair counts for p < 200") {
  for (u64 p : oracle::sieve(200)) {
    if (p < 3) continue;
    const auto r = equal_order_probability_exact(p);
    const u64 den = (p - 1) * (p - 1);
    CHECK(equal_pairs(p) * r.alpha2_den == r.alpha2_num * den);
    CHECK(std::gcd(r.alpha2_num, r.alpha2_den) == 1);
    CHECK(std::abs(r.alpha2 - static_cast<double>(r.alpha2_num) / static_cast<double>(r.alpha2_den)) <= 1e-12);
  }
}

TEST_CASE("probability chain for p < 10^4") {
  for (u64 p : oracle::sieve(10000)) {
    if (p < 3) continue;
    const auto r = equal_order_probability_exact(p);
    CHECK(r.chain_holds);
    const double n = static_cast<double>(p - 1);
    CHECK(r.alpha2 >= 1.0 / (n * n));
    CHECK(r.alpha2 <= r.phi_ratio + 1e-15);
    CHECK(r.phi_ratio <= 0.5);
  }
}

TEST_CASE("sampled estimator") {
  const auto a = equal_order_probability_sampled(7, 10000, 42);
  const auto b = equal_order_probability_sampled(7, 10000, 42);
  REQUIRE(a.sampled);
  CHECK(a.sampled->hits == b.sampled->hits);
  CHECK(a.sampled->seed == 42);
  const double ref = coprime_reference(7);
  CHECK(coprime_equal_order_reference(7) == doctest::Approx(ref));
  CHECK(std::abs(a.sampled->estimate - ref) <= 4.0 * std::sqrt(ref * (1 - ref) / 10000));

  const auto one = equal_order_probability_sampled(101, 1, 9);
  CHECK((one.sampled->estimate == 0.0 || one.sampled->estimate == 1.0));

  for (u64 p : {7ULL, 101ULL}) {
    const auto r = equal_order_probability_sampled(p, 100000, 7);
    const double rp = coprime_reference(p);
    CHECK(std::abs(r.sampled->estimate - rp) <= 4.0 * std::sqrt(rp * (1 - rp) / 100000));
  }
  // fixed (seed, workers) pairs are reproducible
  const auto w3 = equal_order_probability_sampled(101, 30001, 5, 3);
  CHECK(w3.sampled->hits == equal_order_probability_sampled(101, 30001, 5, 3).sampled->hits);
  CHECK(w3.sampled->trials == 30001);
  CHECK_THROWS_AS(equal_order_probability_sampled(7, 0, 1), DomainError);
  CHECK_THROWS_AS(equal_order_probability_sampled(3, 10, 1), DomainError);
}

TEST_CASE("bounded draws are uniform") {
  SplitMix64 rng(123);
  std::vector<u64> counts(5, 0);
  for (int i = 0; i < 50000; ++i) ++counts[rng.below(5)];
  for (u64 c : counts) CHECK(std::abs(static_cast<double>(c) - 10000.0) < 500.0);
  CHECK_THROWS_AS(rng.below(0), DomainError);
}

TEST_CASE("average order") {
  const auto t10 = avg_order(10, RationalBase::make(2));
  CHECK(t10.order_sum == 15);
  CHECK(t10.value == 1.5);
  CHECK(avg_order(3, RationalBase::make(2)).value == doctest::Approx(2.0 / 3.0));
  for (i64 u : {2, 3, 5, -2}) {
    u64 sum = 0;
    for (u64 n = 2; n <= 1000; ++n) {
      const u64 r = static_cast<u64>(((u % static_cast<i64>(n)) + static_cast<i64>(n)) % static_cast<i64>(n));
      if (std::gcd(r, n) == 1) sum += oracle::order(r, n);
    }
    CHECK(avg_order(1000, RationalBase::make(u)).order_sum == sum);
  }
  for (i64 u : {2, 3}) {
    CHECK(avg_order(10000, RationalBase::make(u)).value > avg_order(1000, RationalBase::make(u)).value);
  }
  CHECK_THROWS_AS(avg_order(10, RationalBase::make(1, 2)), DomainError);
  CHECK_THROWS_AS(avg_order(1, RationalBase::make(2)), DomainError);
  CHECK_THROWS_AS(avg_order(1'000'001, RationalBase::make(2)), DomainError);
}

TEST_CASE("order modulo composites") {
  CHECK(order_mod_n(2, 9) == 6);
  CHECK(order_mod_n(3, 8) == 2);
  CHECK(order_mod_n(-1, 15) == 2);
  CHECK_THROWS_AS(order_mod_n(3, 9), NotInvertible);
}
