#pragma once

#include <string>
#include <vector>

#include "ordlab/arith.hpp"
#include "ordlab/indicator.hpp"

namespace ordlab {

// Sweeps past 2x = 2 * 10^7 need CensusQuery::allow_large.
inline constexpr u64 kCensusCap = 10'000'000;

struct CensusQuery {
  u64 x = 10;
  std::vector<OrderSpec> specs;  // k = specs.size() in [1, 8]
  double growth_exponent = 0.0;  // B, reporting only
  bool allow_large = false;

  // Throws DomainError for x < 3, k outside [1, 8] or x above the cap, and
  // InadmissibleTuple when the bases are multiplicatively dependent.
  void validate() const;
  std::string specs_text() const;  // "u:d;u:d"
};

struct CensusReport {
  CensusQuery query;
  u64 prime_count_total = 0;
  u64 matching = 0;  // R
  u64 skipped = 0;   // some d_i does not divide p - 1, or a base is not invertible
  double main_term = 0.0;
  double e3_abs = 0.0;
  double analytic_lower_bound = 0.0;
  double ratio = 0.0;  // R / analytic_lower_bound
  u64 index_product = 1;
  u64 index_lcm = 1;
  std::vector<u64> witnesses;  // first <= 32 matching primes
};

inline constexpr std::size_t kMaxWitnesses = 32;

// x / ((log x)^{2Bk+1} (log log x)^k)
double analytic_lower_bound(u64 x, double growth_exponent, std::size_t k);

// Primes p in [x, 2x] with ord_p(u_i) = (p-1)/d_i for every spec.
CensusReport count_simultaneous(const CensusQuery& query, unsigned workers = 1);

// sum over primes p in [x, 2x], p = 1 mod lcm(d, e), of
// phi((p-1)/d) phi((p-1)/e) / p^2.
double main_term(u64 x, u64 d, u64 e, unsigned workers = 1);

struct DecompositionAudit {
  CensusQuery query;
  u64 primes_audited = 0;
  u64 matching = 0;  // R over the audited primes
  // Block totals as exact reduced fractions and as doubles.
  std::string main_exact, e1_exact, e2_exact, e3_exact;
  double main_total = 0.0, e1_total = 0.0, e2_total = 0.0, e3_total = 0.0;
  bool identity_exact = false;  // main + e1 + e2 + e3 == R in exact arithmetic
  u64 hit_mismatches = 0;       // primes where hit counts disagree with indicator_direct
  // Primes where the u (resp. v) indicator is 0, and how many of them have a
  // nonzero e1 (resp. e2) block.
  u64 u_vanishing_primes = 0, e1_nonzero = 0;
  u64 v_vanishing_primes = 0, e2_nonzero = 0;
  // Primes where the full a-indexed (b-indexed) sum fails to vanish although
  // the indicator is 0.
  u64 full_block_nonzero = 0;
  double e3_abs = 0.0;
  double e3_reference = 0.0;  // x^{1 - 2 eps}, eps = 0.1
  double e3_ratio = 0.0;
};

DecompositionAudit decomposition_audit(const CensusQuery& query, unsigned workers = 1);

struct TotientAverage {
  u64 x = 0, modulus = 1, residue = 0;
  std::vector<u64> indices;
  u64 primes = 0;
  u64 non_dividing = 0;  // primes where some d_i does not divide p - 1 (term 0)
  double sum = 0.0;      // S
  double constant_estimate = 0.0;  // S phi(q) log x / x
};

// Conjecture probe for the progression constants of the totient product.
TotientAverage totient_product_avg(u64 x, u64 modulus, u64 residue, const std::vector<u64>& indices,
                                   unsigned workers = 1);

}  // namespace ordlab
