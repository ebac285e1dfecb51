#include <doctest.h>

#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/indicator.hpp"

using namespace ordlab;

namespace {

OrderSpec spec(i64 u, u64 d) { return OrderSpec::make(RationalBase::make(u), d); }

// Independent character-sum evaluation: the characters of exact order d
// are chi_j(tau^L) = e(jL/d) with gcd(j, d) = 1.
double character_sum(u64 d, u64 L) {
  double total = 0.0;
  for (u64 j = 1; j <= d; ++j) {
    if (std::gcd(j, d) != 1) continue;
    total += std::cos(2.0 * std::numbers::pi * static_cast<double>((j * L) % d) / static_cast<double>(d));
  }
  return total;
}

}  // namespace

TEST_CASE("order spec parsing") {
  const auto s = OrderSpec::parse("-3/2:4");
  CHECK(s.base == RationalBase::make(-3, 2));
  CHECK(s.index == 4);
  CHECK(s.to_string() == "-3/2:4");
  CHECK_THROWS_AS(OrderSpec::parse("3"), DomainError);
  CHECK_THROWS_AS(OrderSpec::parse("3:"), DomainError);
  CHECK_THROWS_AS(OrderSpec::parse("3:0"), DomainError);
  CHECK_THROWS_AS(OrderSpec::parse("3:x"), DomainError);
}

TEST_CASE("indicator examples") {
  const PrimeContext seven(7), five(5);
  CHECK(indicator_direct(spec(2, 2), seven) == 1);
  CHECK(indicator_direct(spec(2, 1), seven) == 0);
  CHECK(indicator_direct(spec(3, 1), seven) == 1);
  CHECK(indicator_direct(spec(2, 4), seven) == 0);  // 4 does not divide 6

  CHECK(psi_divisor(3, seven).rounded == 1);
  CHECK(psi_divisor(2, seven).rounded == 0);
  CHECK(psi_divisor(1, seven).rounded == 0);

  CHECK(psi_free(3, seven).rounded == 1);
  CHECK(psi_free(2, seven).rounded == 0);
  CHECK(psi_free(4, five).rounded == 0);

  CHECK(psi_free_d(spec(2, 2), seven).rounded == 1);
  CHECK(psi_free_d(spec(3, 1), seven).rounded == 1);
  CHECK(psi_free_d(1, 6, seven).rounded == 1);

  CHECK_THROWS_AS(psi_free_d(2, 4, seven), IndexNotDividing);
  CHECK_THROWS_AS(psi_free(0, seven), DomainError);
  CHECK_THROWS_AS(psi_free(7, seven), DomainError);
}

TEST_CASE("exhaustive indicator equivalence for p < 400") {
  for (u64 p : oracle::sieve(400)) {
    if (p < 3) continue;
    const PrimeContext ctx(p);
    const IndicatorEvaluator ev(ctx);
    for (u64 u = 1; u < p; ++u) {
      const u64 ord = oracle::order(u, p);
      int partition = 0;
      for (u64 d : ctx.p_minus_one().divisors()) {
        const int truth = ord == (p - 1) / d ? 1 : 0;
        REQUIRE(indicator_direct(u, d, ctx) == truth);
        partition += truth;
        const auto v = ev.psi_free_d(u, d);
        CHECK(v.rounded == truth);
        CHECK(v.residual <= 1e-6 * static_cast<double>(p));
        CHECK(ev.hit_count(u, d) == static_cast<u64>(truth));
      }
      CHECK(partition == 1);
      CHECK(ev.psi_divisor(u).rounded == indicator_direct(u, 1, ctx));
      CHECK(ev.psi_free(u).rounded == indicator_direct(u, 1, ctx));
    }
  }
}

TEST_CASE("element-count identity") {
  for (u64 p : {3ULL, 13ULL, 31ULL, 97ULL, 241ULL}) {
    const PrimeContext ctx(p);
    for (u64 d : ctx.p_minus_one().divisors()) {
      u64 count = 0;
      for (u64 u = 1; u < p; ++u) count += static_cast<u64>(indicator_direct(u, d, ctx));
      CHECK(count == oracle::phi((p - 1) / d));
    }
  }
}

TEST_CASE("single-shot and batch evaluators agree") {
  const PrimeContext ctx(101);
  const IndicatorEvaluator ev(ctx);
  for (u64 u : {2ULL, 5ULL, 36ULL, 100ULL}) {
    for (u64 d : {1ULL, 4ULL, 10ULL}) {
      const auto a = psi_free_d(u, d, ctx);
      const auto b = ev.psi_free_d(u, d);
      CHECK(a.rounded == b.rounded);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("ramanujan sums equal explicit character sums") {
  for (u64 d : {1ULL, 2ULL, 3ULL, 5ULL, 6ULL, 10ULL, 30ULL, 42ULL, 210ULL}) {
    const auto fd = factor_or_one(d);
    for (u64 L = 0; L < 2 * d + 3; ++L) {
      CHECK(static_cast<double>(ramanujan_sum(fd, L)) == doctest::Approx(character_sum(d, L)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(ramanujan_sum(factorize(12), 1), DomainError);
}

TEST_CASE("decompose_terms example at p = 7") {
  const PrimeContext ctx(7);
  const auto t = decompose_terms(spec(3, 1), spec(2, 2), ctx);
  CHECK(t.denominator() == 49);
  CHECK(t.main_num == 4);  // phi(6) phi(3)
  CHECK(t.main_num + t.e1_num + t.e2_num + t.e3_num == 49);
  CHECK(t.main() + t.e1() + t.e2() + t.e3() == doctest::Approx(1.0));
}

TEST_CASE("decompose_terms exactness and vanishing full blocks") {
  for (u64 p : oracle::sieve(300)) {
    if (p < 7) continue;
    const PrimeContext ctx(p);
    for (auto [su, sv] : {std::pair{spec(2, 1), spec(3, 1)}, std::pair{spec(3, 1), spec(2, 2)},
                          std::pair{spec(5, 2), spec(-2, 1)}}) {
      if ((p - 1) % su.index || (p - 1) % sv.index || p == 3 || p == 5) continue;
      const auto t = decompose_terms(su, sv, ctx);
      const i64 truth = indicator_direct(su, ctx) * indicator_direct(sv, ctx);
      CHECK(t.main_num + t.e1_num + t.e2_num + t.e3_num == truth * t.denominator());
      if (indicator_direct(su, ctx) == 0) CHECK(t.full_u_block() == 0);
      if (indicator_direct(sv, ctx) == 0) CHECK(t.full_v_block() == 0);
    }
  }
}

TEST_CASE("decompose_terms floating cross-check by direct summation") {
  // Evaluate the four (a, b) blocks with complex exponentials.
  const u64 p = 31;
  const PrimeContext ctx(p);
  const auto su = spec(3, 1), sv = spec(2, 5);
  const auto t = decompose_terms(su, sv, ctx);
  const auto e = [&](u64 k) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % p) / static_cast<double>(p));
  };
  const auto inner = [&](u64 a, u64 u, u64 d) {
    const u64 m = (p - 1) / d;
    std::complex<double> s = 0.0;
    for (u64 n = 1; n <= m; ++n) {
      if (std::gcd(n, m) != 1) continue;
      s += e(a * ((oracle::pow_mod(ctx.tau(), d * n, p) + p - u) % p));
    }
    return s;
  };
  const u64 ru = reduce_mod(su.base, p), rv = reduce_mod(sv.base, p);
  std::complex<double> blocks[2][2] = {};
  for (u64 a = 0; a < p; ++a) {
    const auto iu = inner(a, ru, su.index);
    for (u64 b = 0; b < p; ++b) blocks[a != 0][b != 0] += iu * inner(b, rv, sv.index);
  }
  const double den = static_cast<double>(p * p);
  CHECK(blocks[0][0].real() / den == doctest::Approx(t.main()).epsilon(1e-9));
  CHECK(blocks[0][1].real() / den == doctest::Approx(t.e1()).epsilon(1e-9));
  CHECK(blocks[1][0].real() / den == doctest::Approx(t.e2()).epsilon(1e-9));
  CHECK(blocks[1][1].real() / den == doctest::Approx(t.e3()).epsilon(1e-9));
}
