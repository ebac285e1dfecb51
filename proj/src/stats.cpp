#include <numeric>
#include <string>

#include "ordlab/errors.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/stats.hpp"

namespace ordlab {

namespace {

void check_prime(u64 p, const char* what) {
  if (p < 3 || p >= (u64{1} << 32) || !is_prime(p)) {
    throw DomainError(std::string(what) + ": p=" + std::to_string(p) + " must be an odd prime below 2^32");
  }
}

// Orders of 1..p-1 in one pass over the powers of a primitive root:
// ord(tau^j) = (p-1) / gcd(j, p-1).
std::vector<u64> order_table(const PrimeContext& ctx) {
  const u64 p = ctx.p();
  std::vector<u64> orders(p, 0);
  u64 x = 1;
  for (u64 j = 0; j + 1 < p; ++j) {
    orders[x] = (p - 1) / std::gcd(j, p - 1);
    x = mul_mod(x, ctx.tau(), p);
  }
  return orders;
}

}  // namespace

u64 SplitMix64::below(u64 bound) {
  if (bound == 0) throw DomainError("SplitMix64::below: bound must be positive");
  // Reject the top sliver so every residue is equally likely.
  const u64 limit = ~u64{0} - (~u64{0} % bound + 1) % bound;
  for (;;) {
    const u64 r = next();
    if (r <= limit) return r % bound;
  }
}

ProbabilityReport equal_order_probability_exact(u64 p) {
  check_prime(p, "equal_order_probability_exact");
  const u64 n = p - 1;
  const auto fn = factorize(n);

  u64 phi_total = 0;
  u64 squares = 0;
  for (u64 d : fn.divisors()) {
    const u64 phi = euler_phi(factor_or_one(d));
    phi_total += phi;
    squares += phi * phi;
  }
  if (phi_total != n) {
    throw IdentityViolation("sum of phi(d) over d | " + std::to_string(n) + " is " + std::to_string(phi_total));
  }

  ProbabilityReport r;
  r.p = p;
  const u64 den = n * n;
  const u64 g = std::gcd(squares, den);
  r.alpha2_num = squares / g;
  r.alpha2_den = den / g;
  r.alpha2 = static_cast<double>(squares) / static_cast<double>(den);
  const u64 phi_n = euler_phi(fn);
  r.phi_ratio = static_cast<double>(phi_n) / static_cast<double>(n);
  // 1 <= squares, squares * n <= phi(n) * n^2 i.e. squares <= n phi(n), 2 phi(n) <= n
  const auto wide = [](u64 a, u64 b) { return static_cast<unsigned __int128>(a) * b; };
  r.chain_holds = squares >= 1 && wide(squares, 1) <= wide(n, phi_n) && 2 * phi_n <= n;
  return r;
}

double coprime_equal_order_reference(u64 p) {
  check_prime(p, "coprime_equal_order_reference");
  if (p < 5) throw DomainError("coprime_equal_order_reference: no coprime pair in [2, p-1] for p=3");
  const auto orders = order_table(PrimeContext(p));
  u64 pairs = 0, hits = 0;
  for (u64 a = 2; a < p; ++a) {
    for (u64 b = 2; b < p; ++b) {
      if (std::gcd(a, b) != 1) continue;
      ++pairs;
      if (orders[a] == orders[b]) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(pairs);
}

ProbabilityReport equal_order_probability_sampled(u64 p, u64 trials, u64 seed, unsigned workers) {
  ProbabilityReport report = equal_order_probability_exact(p);
  if (trials == 0) throw DomainError("equal_order_probability_sampled: trials must be >= 1");
  if (p < 5) throw DomainError("equal_order_probability_sampled: no coprime pair in [2, p-1] for p=3");
  if (workers == 0) workers = 1;

  const PrimeContext ctx(p);
  const bool tabulate = p <= (u64{1} << 24);
  const std::vector<u64> orders = tabulate ? order_table(ctx) : std::vector<u64>{};
  const auto order_of = [&](u64 a) { return tabulate ? orders[a] : residue_order(a, ctx); };

  // Worker w owns a fixed slice of the trials and its own stream, so the
  // totals depend only on (seed, workers).
  const auto hits = parallel_map(workers, workers, [&](std::size_t w) {
    const u64 share = trials / workers + (w < trials % workers ? 1 : 0);
    SplitMix64 rng(seed ^ (0xd1342543de82ef95ULL * (w + 1)));
    u64 local = 0;
    for (u64 i = 0; i < share; ++i) {
      u64 a = 0, b = 0;
      do {
        a = 2 + rng.below(p - 2);
        b = 2 + rng.below(p - 2);
      } while (std::gcd(a, b) != 1);
      if (order_of(a) == order_of(b)) ++local;
    }
    return local;
  });

  SampledEstimate s;
  s.trials = trials;
  s.hits = std::accumulate(hits.begin(), hits.end(), u64{0});
  s.estimate = static_cast<double>(s.hits) / static_cast<double>(trials);
  s.seed = seed;
  s.workers = workers;
  report.sampled = s;
  return report;
}

u64 order_mod_n(i64 u, u64 n) {
  if (n < 2) throw DomainError("order_mod_n: modulus must be >= 2");
  const i64 sn = static_cast<i64>(n);
  const u64 r = static_cast<u64>(((u % sn) + sn) % sn);
  if (std::gcd(r, n) != 1) {
    throw NotInvertible("order_mod_n: " + std::to_string(u) + " is not a unit mod " + std::to_string(n));
  }
  // lcm of the orders modulo each prime power of n
  u64 order = 1;
  const auto fn = factorize(n);
  for (const auto& f : fn.factors()) {
    u64 pk = 1;
    for (unsigned i = 0; i < f.exponent; ++i) pk *= f.prime;
    const u64 group = pk / f.prime * (f.prime - 1);
    if (group == 1) continue;
    order = std::lcm(order, order_in_group(r % pk, pk, factorize(group)));
  }
  return order;
}

AverageOrder avg_order(u64 x, const RationalBase& u) {
  if (!u.is_integer()) throw DomainError("avg_order: base must be an integer, got " + u.to_string());
  if (x < 2 || x > 1'000'000) throw DomainError("avg_order: x=" + std::to_string(x) + " outside [2, 10^6]");
  AverageOrder out;
  out.x = x;
  out.u = u.numerator();
  const u64 mag = static_cast<u64>(u.numerator() < 0 ? -u.numerator() : u.numerator());
  for (u64 n = 2; n <= x; ++n) {
    if (std::gcd(mag, n) != 1) continue;
    out.order_sum += order_mod_n(out.u, n);
  }
  out.value = static_cast<double>(out.order_sum) / static_cast<double>(x);
  return out;
}

}  // namespace ordlab
