#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ordlab/census.hpp"
#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

OrderSpec spec(i64 u, u64 d) { return OrderSpec::make(RationalBase::make(u), d); }

CensusQuery query(u64 x, std::vector<OrderSpec> specs) {
  CensusQuery q;
  q.x = x;
  q.specs = std::move(specs);
  return q;
}

// Direct scan by repeated multiplication; integer bases only.
u64 scan(u64 x, const std::vector<std::pair<i64, u64>>& specs) {
  u64 count = 0;
  for (u64 p = x; p <= 2 * x; ++p) {
    if (p < 3 || !oracle::is_prime(p)) continue;
    bool ok = true;
    for (auto [u, d] : specs) {
      const u64 r = static_cast<u64>(((u % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
      if (r == 0 || (p - 1) % d != 0 || oracle::order(r, p) != (p - 1) / d) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("census examples") {
  const auto r = count_simultaneous(query(4, {spec(3, 1), spec(2, 2)}));
  CHECK(r.matching == 1);
  CHECK(r.witnesses == std::vector<u64>{7});
  const auto k1 = count_simultaneous(query(10, {spec(2, 1)}));
  CHECK(k1.matching == 3);
  CHECK(k1.witnesses == std::vector<u64>{11, 13, 19});
  CHECK(k1.prime_count_total == 4);
}

TEST_CASE("census equals a direct scan for x <= 10^4") {
  const std::vector<std::vector<std::pair<i64, u64>>> tuples = {
      {{3, 1}, {2, 2}}, {{2, 1}}, {{3, 1}, {5, 1}, {2, 2}}, {{-3, 2}, {7, 1}}, {{10, 3}}};
  for (const auto& t : tuples) {
    std::vector<OrderSpec> specs;
    for (auto [u, d] : t) specs.push_back(spec(u, d));
    for (u64 x : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
      const auto r = count_simultaneous(query(x, specs), 2);
      CHECK(r.matching == scan(x, t));
      CHECK(r.matching <= r.prime_count_total);
      for (u64 p : r.witnesses) {
        const PrimeContext ctx(p);
        for (const auto& s : specs) CHECK(indicator_direct(s, ctx) == 1);
      }
    }
  }
}

TEST_CASE("rational bases in the census") {
  // 3/2 and 5: compare with direct orders of 3 * 2^-1
  const auto r = count_simultaneous(query(1000, {OrderSpec::make(RationalBase::make(3, 2), 1)}));
  u64 expected = 0;
  for (u64 p = 1000; p <= 2000; ++p) {
    if (!oracle::is_prime(p)) continue;
    const u64 half = (p + 1) / 2;
    expected += oracle::order(3 * half % p, p) == p - 1;
  }
  CHECK(r.matching == expected);
}

TEST_CASE("adding a spec never increases R") {
  const auto base = count_simultaneous(query(5000, {spec(3, 1)}));
  const auto two = count_simultaneous(query(5000, {spec(3, 1), spec(2, 2)}));
  const auto three = count_simultaneous(query(5000, {spec(3, 1), spec(2, 2), spec(5, 1)}));
  CHECK(two.matching <= base.matching);
  CHECK(three.matching <= two.matching);
}

TEST_CASE("census is independent of the worker count") {
  const auto q = query(20000, {spec(3, 1), spec(2, 2)});
  const auto a = count_simultaneous(q, 1);
  const auto b = count_simultaneous(q, 4);
  CHECK(a.matching == b.matching);
  CHECK(a.skipped == b.skipped);
  CHECK(a.main_term == b.main_term);
  CHECK(a.e3_abs == b.e3_abs);
  CHECK(a.witnesses == b.witnesses);
}

TEST_CASE("census validation") {
  CHECK_THROWS_AS(count_simultaneous(query(100, {spec(3, 1), spec(9, 1)})), InadmissibleTuple);
  CHECK_THROWS_AS(count_simultaneous(query(100, {})), DomainError);
  CHECK_THROWS_AS(count_simultaneous(query(2, {spec(3, 1)})), DomainError);
  CHECK_THROWS_AS(count_simultaneous(query(kCensusCap + 1, {spec(3, 1)})), DomainError);
}

TEST_CASE("two-base census stays positive") {
  for (i64 u : {3, 5, 7}) {
    for (u64 x : {1000ULL, 10000ULL}) CHECK(count_simultaneous(query(x, {spec(u, 1), spec(2, 2)})).matching > 0);
  }
}

TEST_CASE("main term") {
  const double hand = 16.0 / 121 + 16.0 / 169 + 64.0 / 289 + 36.0 / 361;
  CHECK(std::abs(main_term(10, 1, 1) - hand) <= 1e-12);
  double two = 0.0;
  for (u64 p : {11, 13, 17, 19}) {
    const double f = static_cast<double>(oracle::phi((p - 1) / 2));
    two += f * f / static_cast<double>(p * p);
  }
  CHECK(main_term(10, 2, 2) == doctest::Approx(two).epsilon(1e-12));
  CHECK(main_term(3, 50, 60) == 0.0);
  CHECK(main_term(10000, 2, 3, 1) == main_term(10000, 2, 3, 4));
}

TEST_CASE("decomposition audit identity") {
  for (u64 x : {100ULL, 1000ULL}) {
    const auto a = decomposition_audit(query(x, {spec(3, 1), spec(2, 2)}));
    CHECK(a.identity_exact);
    CHECK(a.hit_mismatches == 0);
    CHECK(a.full_block_nonzero == 0);
    CHECK(a.main_total + a.e1_total + a.e2_total + a.e3_total == doctest::Approx(static_cast<double>(a.matching)));
  }
  // a range without matches: the four totals cancel exactly
  const auto none = decomposition_audit(query(4, {spec(5, 1), spec(2, 1)}));
  CHECK(none.matching == 0);
  CHECK(none.identity_exact);
  CHECK_THROWS_AS(decomposition_audit(query(100, {spec(3, 1)})), DomainError);
}

TEST_CASE("totient product average") {
  const auto r = totient_product_avg(1000, 1, 0, {1});
  double oracle_sum = 0.0;
  u64 count = 0;
  for (u64 p = 1000; p <= 2000; ++p) {
    if (!oracle::is_prime(p)) continue;
    ++count;
    oracle_sum += static_cast<double>(oracle::phi(p - 1)) / static_cast<double>(p - 1);
  }
  CHECK(r.primes == count);
  CHECK(r.sum == doctest::Approx(oracle_sum).epsilon(1e-12));
  CHECK(r.constant_estimate == doctest::Approx(oracle_sum * std::log(1000.0) / 1000.0).epsilon(1e-12));
  const auto empty = totient_product_avg(3, 100, 1, {1});
  CHECK(empty.sum == 0.0);
  CHECK(totient_product_avg(10000, 4, 1, {1, 2}, 1).sum == totient_product_avg(10000, 4, 1, {1, 2}, 3).sum);
  CHECK_THROWS_AS(totient_product_avg(1000, 4, 2, {1}), DomainError);
}
