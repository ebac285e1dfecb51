#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "ordlab/arith.hpp"

namespace ordlab {

// "ord_p(base) = (p - 1) / index".
struct OrderSpec {
  RationalBase base;
  u64 index = 1;

  // Throws DomainError for index 0.
  static OrderSpec make(RationalBase base, u64 index);
  // Parses "u:d" where u is "n" or "n/m".
  static OrderSpec parse(std::string_view text);
  std::string to_string() const;
};

struct IndicatorValue {
  double value = 0.0;
  int rounded = 0;
  double residual = 0.0;  // |value - rounded|
  u64 terms = 0;          // summed terms, scales the residual tolerance
};

inline constexpr double kIndicatorTolerancePerTerm = 1e-6;

// Ground truth: 1 iff index | p - 1 and ord_p(base) = (p - 1) / index.
int indicator_direct(const OrderSpec& spec, const PrimeContext& ctx);
int indicator_direct(u64 residue, u64 index, const PrimeContext& ctx);

// Divisor-dependent (Vinogradov) primitive-root detector, characters realized
// through the discrete log of u to the base tau.
IndicatorValue psi_divisor(u64 u, const PrimeContext& ctx);
// Divisor-free primitive-root detector.
IndicatorValue psi_free(u64 u, const PrimeContext& ctx);
// Divisor-free detector of elements of order (p - 1) / d. Throws
// IndexNotDividing when d does not divide p - 1.
IndicatorValue psi_free_d(u64 u, u64 d, const PrimeContext& ctx);
IndicatorValue psi_free_d(const OrderSpec& spec, const PrimeContext& ctx);

// Ramanujan sum c_d(n): the sum of chi(tau^n) over the phi(d) characters of
// exact order d. d must be squarefree.
i64 ramanujan_sum(const FactoredInteger& d, u64 n);

// Batch evaluator for one prime: caches the additive inner sums
// S(w) = sum_{k<p} e(wk/p) on first use, the powers of tau and the
// discrete-log table, so sweeping every (u, d) costs O(p^2) overall.
// Caches are filled lazily; use one evaluator per thread.
class IndicatorEvaluator {
 public:
  explicit IndicatorEvaluator(const PrimeContext& ctx);

  IndicatorValue psi_divisor(u64 u) const;
  IndicatorValue psi_free(u64 u) const { return psi_free_d(u, 1); }
  IndicatorValue psi_free_d(u64 u, u64 d) const;

  // Number of n in [1, (p-1)/d], gcd(n, (p-1)/d) = 1, with tau^{dn} = u.
  u64 hit_count(u64 u, u64 d) const;

  const PrimeContext& context() const { return ctx_; }

 private:
  std::complex<double> inner_sum(u64 w) const;
  u64 tau_pow(u64 e) const { return tau_powers_[e % (ctx_.p() - 1)]; }
  void require_index(u64 d) const;
  // tau^{dn} for n <= (p-1)/d coprime to (p-1)/d
  const std::vector<u64>& coprime_powers(u64 d) const;

  PrimeContext ctx_;
  std::vector<std::complex<double>> roots_;  // e(j/p)
  std::vector<u64> tau_powers_;              // tau^j, j < p - 1
  mutable std::vector<std::complex<double>> inner_;
  mutable std::vector<char> inner_ready_;
  mutable std::optional<DiscreteLog> dlog_;
  mutable std::map<u64, std::vector<u64>> coprime_powers_;
  std::vector<std::pair<FactoredInteger, int>> squarefree_;  // (d, mu(d))
};

// Exact expansion of Psi_p(u,d) * Psi_p(v,e) over frequency pairs (a, b) in
// [0, p-1]^2. Each block is an integer numerator over p^2.
struct TermDecomposition {
  u64 p = 0;
  u64 phi_u = 0;   // phi((p-1)/d), the number of n terms for u
  u64 phi_v = 0;   // phi((p-1)/e)
  u64 hits_u = 0;  // solutions of tau^{dn} = u
  u64 hits_v = 0;
  i64 main_num = 0;  // (a, b) = (0, 0)
  i64 e1_num = 0;    // a = 0, b != 0
  i64 e2_num = 0;    // a != 0, b = 0
  i64 e3_num = 0;    // a != 0, b != 0

  i64 denominator() const { return static_cast<i64>(p * p); }
  double main() const { return static_cast<double>(main_num) / denominator(); }
  double e1() const { return static_cast<double>(e1_num) / denominator(); }
  double e2() const { return static_cast<double>(e2_num) / denominator(); }
  double e3() const { return static_cast<double>(e3_num) / denominator(); }
  // The full a-indexed block sum_{a<p} sum_n e(a(tau^{dn}-u)/p) = p * hits_u.
  i64 full_u_block() const { return static_cast<i64>(p * hits_u); }
  i64 full_v_block() const { return static_cast<i64>(p * hits_v); }
};

TermDecomposition decompose_terms(const OrderSpec& u, const OrderSpec& v, const PrimeContext& ctx);

}  // namespace ordlab
