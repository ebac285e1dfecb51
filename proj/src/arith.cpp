#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "ordlab/arith.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/primes.hpp"

namespace ordlab {

// ---- FactoredInteger -------------------------------------------------------

FactoredInteger::FactoredInteger(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {
  unsigned __int128 product = 1;
  u64 previous = 0;
  for (const auto& f : factors_) {
    if (f.prime <= previous || f.exponent == 0 || !is_prime(f.prime)) {
      throw DomainError("FactoredInteger: malformed factor list for " + std::to_string(value));
    }
    previous = f.prime;
    for (unsigned i = 0; i < f.exponent; ++i) {
      product *= f.prime;
      if (product > value) break;
    }
  }
  if (value == 0 || product != value) {
    throw DomainError("FactoredInteger: factors do not multiply to " + std::to_string(value));
  }
}

bool FactoredInteger::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

std::vector<u64> FactoredInteger::divisors() const {
  std::vector<u64> out{1};
  for (const auto& f : factors_) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<u64, int>> FactoredInteger::squarefree_divisors() const {
  std::vector<std::pair<u64, int>> out{{1, 1}};
  for (const auto& f : factors_) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.emplace_back(out[i].first * f.prime, -out[i].second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 FactoredInteger::divisor_count() const {
  u64 count = 1;
  for (const auto& f : factors_) count *= f.exponent + 1;
  return count;
}

FactoredInteger FactoredInteger::quotient(u64 d) const {
  if (d == 0 || value_ % d != 0) {
    throw DomainError("FactoredInteger::quotient: " + std::to_string(d) + " does not divide " +
                      std::to_string(value_));
  }
  std::vector<PrimePower> rest;
  for (auto f : factors_) {
    while (d % f.prime == 0) {
      d /= f.prime;
      --f.exponent;
    }
    if (f.exponent > 0) rest.push_back(f);
  }
  u64 v = 1;
  for (const auto& f : rest) {
    for (unsigned i = 0; i < f.exponent; ++i) v *= f.prime;
  }
  FactoredInteger out;
  out.value_ = v;
  out.factors_ = std::move(rest);
  return out;
}

// ---- modular arithmetic ----------------------------------------------------

u64 pow_mod_u(u64 base, u64 exponent, u64 modulus) {
  u64 result = 1 % modulus;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exponent >>= 1;
  }
  return result;
}

i64 pow_mod(i64 base, u64 exponent, i64 modulus) {
  if (modulus < 2) throw DomainError("pow_mod: modulus must be >= 2, got " + std::to_string(modulus));
  const u64 m = static_cast<u64>(modulus);
  i64 r = base % modulus;
  if (r < 0) r += modulus;
  return static_cast<i64>(pow_mod_u(static_cast<u64>(r), exponent, m));
}

u64 inverse_mod(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw NotInvertible(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  if (old_s < 0) old_s += static_cast<i64>(m);
  return static_cast<u64>(old_s);
}

u64 euler_phi(const FactoredInteger& n) {
  u64 phi = 1;
  for (const auto& f : n.factors()) {
    phi *= f.prime - 1;
    for (unsigned i = 1; i < f.exponent; ++i) phi *= f.prime;
  }
  return phi;
}

int moebius(const FactoredInteger& n) {
  if (!n.is_squarefree()) return 0;
  return n.factors().size() % 2 == 0 ? 1 : -1;
}

// ---- RationalBase ----------------------------------------------------------

RationalBase RationalBase::make(i64 numerator, i64 denominator) {
  if (denominator == 0) throw DomainError("rational base: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const i64 g = std::gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (numerator == 0 || (denominator == 1 && (numerator == 1 || numerator == -1))) {
    throw DomainError("rational base must not be 0, 1 or -1, got " + std::to_string(numerator) +
                      (denominator == 1 ? "" : "/" + std::to_string(denominator)));
  }
  return RationalBase(numerator, static_cast<u64>(denominator));
}

RationalBase RationalBase::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    i64 v = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw DomainError("cannot parse rational base '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(parse_int(text), 1);
  return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

RationalBase RationalBase::inverse() const {
  return make(num_ < 0 ? -static_cast<i64>(den_) : static_cast<i64>(den_), num_ < 0 ? -num_ : num_);
}

std::string RationalBase::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

u64 reduce_mod(const RationalBase& u, u64 p) {
  i64 r = u.numerator() % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  if (r == 0 || u.denominator() % p == 0) {
    throw NotInvertible("base " + u.to_string() + " is not invertible modulo " + std::to_string(p));
  }
  return mul_mod(static_cast<u64>(r), inverse_mod(u.denominator() % p, p), p);
}

// ---- orders and primitive roots ----------------------------------------------

u64 order_in_group(u64 r, u64 modulus, const FactoredInteger& group_order) {
  u64 order = group_order.value();
  for (const auto& f : group_order.factors()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (pow_mod_u(r, order / f.prime, modulus) != 1) break;
      order /= f.prime;
    }
  }
  return order;
}

u64 residue_order(u64 residue, const PrimeContext& ctx) {
  if (residue == 0 || residue >= ctx.p()) {
    throw DomainError("residue " + std::to_string(residue) + " outside [1, p-1]");
  }
  return order_in_group(residue, ctx.p(), ctx.p_minus_one());
}

u64 order_mod(const RationalBase& u, const PrimeContext& ctx) {
  return residue_order(reduce_mod(u, ctx.p()), ctx);
}

u64 index_mod(const RationalBase& u, const PrimeContext& ctx) {
  return (ctx.p() - 1) / order_mod(u, ctx);
}

u64 primitive_root(u64 p, const FactoredInteger& p_minus_one) {
  if (p < 3 || p >= kDlogLimit) throw DomainError("primitive_root: p must be in [3, 2^40)");
  for (u64 g = 2; g < p; ++g) {
    bool generator = true;
    for (const auto& f : p_minus_one.factors()) {
      if (pow_mod_u(g, (p - 1) / f.prime, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw DomainError("primitive_root: " + std::to_string(p) + " is not prime");
}

u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw DomainError("primitive_root: " + std::to_string(p) + " is not prime");
  return primitive_root(p, factorize(p - 1));
}

PrimeContext::PrimeContext(u64 p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw DomainError("PrimeContext: " + std::to_string(p) + " is not an odd prime");
  p_minus_one_ = factorize(p - 1);
  tau_ = primitive_root(p, p_minus_one_);
  q_ = next_prime_above(p);
}

// ---- discrete logarithm ------------------------------------------------------

DiscreteLog::DiscreteLog(const PrimeContext& ctx) : p_(ctx.p()) {
  if (p_ >= kDlogLimit) throw DlogFailure("discrete log budget exceeded: p >= 2^40");
  const u64 n = p_ - 1;
  step_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n))));
  baby_.reserve(step_);
  u64 x = 1;
  for (u64 j = 0; j < step_; ++j) {
    baby_.emplace(x, j);
    x = mul_mod(x, ctx.tau(), p_);
  }
  giant_ = inverse_mod(pow_mod_u(ctx.tau(), step_, p_), p_);
}

u64 DiscreteLog::log(u64 residue) const {
  if (residue == 0 || residue >= p_) throw DlogFailure("discrete log of a non-unit");
  u64 gamma = residue;
  for (u64 i = 0; i <= step_; ++i) {
    if (auto it = baby_.find(gamma); it != baby_.end()) return (i * step_ + it->second) % (p_ - 1);
    gamma = mul_mod(gamma, giant_, p_);
  }
  throw DlogFailure("discrete log not found for " + std::to_string(residue));
}

}  // namespace ordlab
