#pragma once

#include <optional>

#include "ordlab/arith.hpp"

namespace ordlab {

struct SampledEstimate {
  u64 trials = 0;
  u64 hits = 0;
  double estimate = 0.0;
  u64 seed = 0;
  unsigned workers = 1;
};

struct ProbabilityReport {
  u64 p = 0;
  // alpha2 = sum_{d | p-1} phi(d)^2 / (p-1)^2 as a reduced fraction
  u64 alpha2_num = 0;
  u64 alpha2_den = 1;
  double alpha2 = 0.0;
  double phi_ratio = 0.0;  // phi(p-1) / (p-1)
  // 1/(p-1)^2 <= alpha2 <= phi(p-1)/(p-1) <= 1/2, compared exactly
  bool chain_holds = false;
  std::optional<SampledEstimate> sampled;
};

// Probability that two independent uniform residues of [1, p-1] share their
// multiplicative order. p is an odd prime below 2^32.
ProbabilityReport equal_order_probability_exact(u64 p);

// Exact report plus a Monte Carlo estimate over pairs (a, b) uniform in
// [2, p-1]^2 conditioned on gcd(a, b) = 1. Worker w draws from its own
// stream seeded by (seed, w); results are reproducible per (seed, workers).
ProbabilityReport equal_order_probability_sampled(u64 p, u64 trials, u64 seed, unsigned workers = 1);

// Exhaustive value of the quantity the sampler estimates (coprime pairs in
// [2, p-1]^2). O(p^2).
double coprime_equal_order_reference(u64 p);

// Multiplicative order of u modulo n >= 2, gcd(u, n) = 1.
u64 order_mod_n(i64 u, u64 n);

struct AverageOrder {
  u64 x = 0;
  i64 u = 0;
  u64 order_sum = 0;  // sum of ord_n(u) over 2 <= n <= x, gcd(u, n) = 1
  double value = 0.0;  // order_sum / x
};

// T_u(x) for an integer base u and 2 <= x <= 10^6.
AverageOrder avg_order(u64 x, const RationalBase& u);

// Reproducible 64-bit stream used by the sampler.
class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed) : state_(seed) {}
  u64 next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound) by rejection.
  u64 below(u64 bound);

 private:
  u64 state_;
};

}  // namespace ordlab
