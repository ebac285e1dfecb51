#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ordlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its prime factorization, primes ascending.
class FactoredInteger {
 public:
  FactoredInteger() = default;  // the integer 1
  FactoredInteger(u64 value, std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_squarefree() const;

  // All positive divisors, ascending.
  std::vector<u64> divisors() const;
  // Squarefree divisors with their Moebius sign, ascending by divisor.
  std::vector<std::pair<u64, int>> squarefree_divisors() const;
  u64 divisor_count() const;

  // Factorization of value / d; d must divide value.
  FactoredInteger quotient(u64 d) const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

// ---- modular arithmetic ---------------------------------------------------

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

// base^exponent mod modulus for base already reduced below modulus.
u64 pow_mod_u(u64 base, u64 exponent, u64 modulus);

// base^exponent mod modulus with a signed base; modulus >= 2.
i64 pow_mod(i64 base, u64 exponent, i64 modulus);

// Inverse of a modulo m; throws NotInvertible when gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

// ---- primality and factorization ------------------------------------------

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// Unique factorization of 2 <= n < 2^63.
FactoredInteger factorize(u64 n);

// Like factorize but also accepts n = 1.
FactoredInteger factor_or_one(u64 n);

u64 euler_phi(const FactoredInteger& n);
int moebius(const FactoredInteger& n);

// ---- rational bases --------------------------------------------------------

// A reduced rational u = numerator / denominator with u not in {0, 1, -1}.
class RationalBase {
 public:
  // Reduces and normalizes the sign into the numerator. Throws DomainError
  // for a zero denominator or a value in {0, 1, -1}.
  static RationalBase make(i64 numerator, i64 denominator = 1);
  // Accepts "n" or "n/m".
  static RationalBase parse(std::string_view text);

  i64 numerator() const { return num_; }
  u64 denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  RationalBase inverse() const;
  std::string to_string() const;

  friend bool operator==(const RationalBase&, const RationalBase&) = default;

 private:
  RationalBase(i64 n, u64 d) : num_(n), den_(d) {}
  i64 num_;
  u64 den_;
};

// numerator * denominator^-1 mod p, in [1, p - 1]. Throws NotInvertible when
// p divides the numerator or the denominator.
u64 reduce_mod(const RationalBase& u, u64 p);

// ---- prime context ---------------------------------------------------------

// A prime p >= 3 with the factorization of p - 1, the smallest primitive root
// tau and the least prime q > p. Immutable once built.
class PrimeContext {
 public:
  explicit PrimeContext(u64 p);

  u64 p() const { return p_; }
  const FactoredInteger& p_minus_one() const { return p_minus_one_; }
  u64 tau() const { return tau_; }
  u64 q() const { return q_; }

 private:
  u64 p_;
  FactoredInteger p_minus_one_;
  u64 tau_;
  u64 q_;
};

// Order of the unit r in a group of exponent dividing group_order.value(),
// arithmetic mod modulus. Strips each prime of group_order while possible.
u64 order_in_group(u64 r, u64 modulus, const FactoredInteger& group_order);

u64 order_mod(const RationalBase& u, const PrimeContext& ctx);
u64 index_mod(const RationalBase& u, const PrimeContext& ctx);
u64 residue_order(u64 residue, const PrimeContext& ctx);

inline constexpr u64 kDlogLimit = u64{1} << 40;

// Smallest primitive root of the prime 3 <= p < 2^40.
u64 primitive_root(u64 p);
u64 primitive_root(u64 p, const FactoredInteger& p_minus_one);

// Baby-step giant-step logarithms to the base ctx.tau().
class DiscreteLog {
 public:
  explicit DiscreteLog(const PrimeContext& ctx);

  // L in [0, p - 2] with tau^L = residue; residue in [1, p - 1].
  u64 log(u64 residue) const;

 private:
  u64 p_;
  u64 step_;
  u64 giant_;  // tau^-step
  std::unordered_map<u64, u64> baby_;
};

// ---- admissibility ---------------------------------------------------------

struct Admissibility {
  bool admissible = true;
  // Primitive nonzero integer kernel vector (first nonzero entry positive);
  // empty when admissible.
  std::vector<i64> witness;
  // Sign of prod u_i^{witness_i}: +1 or -1, 0 when admissible.
  int witness_sign = 0;
};

// Multiplicative independence of 1 <= k <= 16 rationals.
Admissibility is_admissible(std::span<const RationalBase> tuple);

}  // namespace ordlab
