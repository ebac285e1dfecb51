#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ordlab/errors.hpp"
#include "ordlab/indicator.hpp"

namespace ordlab {

namespace {

void check_residue(u64 u, const PrimeContext& ctx) {
  if (u == 0 || u >= ctx.p()) {
    throw DomainError("residue u=" + std::to_string(u) + " outside [1, " + std::to_string(ctx.p() - 1) + "]");
  }
}

void check_index(u64 d, const PrimeContext& ctx) {
  if (d == 0 || (ctx.p() - 1) % d != 0) {
    throw IndexNotDividing("index " + std::to_string(d) + " does not divide p-1=" + std::to_string(ctx.p() - 1));
  }
}

IndicatorValue round_checked(std::complex<double> value, u64 terms, const char* what) {
  IndicatorValue out;
  out.value = value.real();
  out.rounded = value.real() >= 0.5 ? 1 : 0;
  out.residual = std::abs(out.value - out.rounded);
  out.terms = terms;
  const double tolerance = kIndicatorTolerancePerTerm * static_cast<double>(terms);
  if (out.residual > tolerance || std::abs(value.imag()) > tolerance) {
    throw IdentityViolation(std::string(what) + ": indicator residual " + std::to_string(out.residual) +
                            " exceeds tolerance");
  }
  return out;
}

// tau^{dn} = u solutions over n <= (p-1)/d coprime to (p-1)/d.
u64 count_hits(u64 u, u64 d, const PrimeContext& ctx) {
  const u64 p = ctx.p();
  const u64 m = (p - 1) / d;
  const u64 step = pow_mod_u(ctx.tau(), d, p);
  u64 x = 1, hits = 0;
  for (u64 n = 1; n <= m; ++n) {
    x = mul_mod(x, step, p);
    if (x == u && std::gcd(n, m) == 1) ++hits;
  }
  return hits;
}

}  // namespace

OrderSpec OrderSpec::make(RationalBase base, u64 index) {
  if (index == 0) throw DomainError("order spec: index must be >= 1");
  return OrderSpec{base, index};
}

OrderSpec OrderSpec::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw DomainError("order spec '" + std::string(text) + "' must be u:d");
  const auto index_text = text.substr(colon + 1);
  u64 index = 0;
  for (char c : index_text) {
    if (c < '0' || c > '9' || index > (u64{1} << 60)) {
      throw DomainError("order spec '" + std::string(text) + "': bad index");
    }
    index = index * 10 + static_cast<u64>(c - '0');
  }
  if (index_text.empty()) throw DomainError("order spec '" + std::string(text) + "': missing index");
  return make(RationalBase::parse(text.substr(0, colon)), index);
}

std::string OrderSpec::to_string() const { return base.to_string() + ":" + std::to_string(index); }

int indicator_direct(u64 residue, u64 index, const PrimeContext& ctx) {
  if (index == 0 || (ctx.p() - 1) % index != 0) return 0;
  return residue_order(residue, ctx) == (ctx.p() - 1) / index ? 1 : 0;
}

int indicator_direct(const OrderSpec& spec, const PrimeContext& ctx) {
  return indicator_direct(reduce_mod(spec.base, ctx.p()), spec.index, ctx);
}

i64 ramanujan_sum(const FactoredInteger& d, u64 n) {
  if (!d.is_squarefree()) throw DomainError("ramanujan_sum: d must be squarefree");
  // von Sterneck: c_d(n) = mu(d/g) phi(g) with g = gcd(d, n), d squarefree.
  i64 value = 1;
  for (const auto& f : d.factors()) {
    if (n % f.prime == 0) {
      value *= static_cast<i64>(f.prime - 1);
    } else {
      value = -value;
    }
  }
  return value;
}

// ---- IndicatorEvaluator ------------------------------------------------------

IndicatorEvaluator::IndicatorEvaluator(const PrimeContext& ctx)
    : ctx_(ctx), inner_(ctx.p()), inner_ready_(ctx.p(), 0) {
  const u64 p = ctx_.p();
  roots_.resize(p);
  for (u64 j = 0; j < p; ++j) {
    roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p));
  }
  tau_powers_.resize(p - 1);
  u64 x = 1;
  for (u64 j = 0; j + 1 < p; ++j) {
    tau_powers_[j] = x;
    x = mul_mod(x, ctx_.tau(), p);
  }
  const auto& primes = ctx_.p_minus_one().factors();
  for (u64 mask = 0; mask < (u64{1} << primes.size()); ++mask) {
    std::vector<PrimePower> chosen;
    u64 d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask >> i & 1) {
        chosen.push_back({primes[i].prime, 1});
        d *= primes[i].prime;
      }
    }
    const int mu = chosen.size() % 2 == 0 ? 1 : -1;
    squarefree_.emplace_back(FactoredInteger(d, std::move(chosen)), mu);
  }
}

void IndicatorEvaluator::require_index(u64 d) const { check_index(d, ctx_); }

std::complex<double> IndicatorEvaluator::inner_sum(u64 w) const {
  if (!inner_ready_[w]) {
    const u64 p = ctx_.p();
    std::complex<double> total = 0.0;
    u64 idx = 0;
    for (u64 k = 0; k < p; ++k) {
      total += roots_[idx];
      idx += w;
      if (idx >= p) idx -= p;
    }
    inner_[w] = total;
    inner_ready_[w] = 1;
  }
  return inner_[w];
}

const std::vector<u64>& IndicatorEvaluator::coprime_powers(u64 d) const {
  auto it = coprime_powers_.find(d);
  if (it == coprime_powers_.end()) {
    const u64 m = (ctx_.p() - 1) / d;
    std::vector<u64> powers;
    for (u64 n = 1; n <= m; ++n) {
      if (std::gcd(n, m) == 1) powers.push_back(tau_pow(d * n));
    }
    it = coprime_powers_.emplace(d, std::move(powers)).first;
  }
  return it->second;
}

IndicatorValue IndicatorEvaluator::psi_free_d(u64 u, u64 d) const {
  check_residue(u, ctx_);
  require_index(d);
  const u64 p = ctx_.p();
  std::complex<double> total = 0.0;
  const auto& powers = coprime_powers(d);
  for (u64 t : powers) total += inner_sum((t + p - u) % p);
  return round_checked(total / static_cast<double>(p), powers.size() * p, "psi_free_d");
}

IndicatorValue IndicatorEvaluator::psi_divisor(u64 u) const {
  check_residue(u, ctx_);
  const u64 n = ctx_.p() - 1;
  if (!dlog_) dlog_.emplace(ctx_);
  const u64 log = dlog_->log(u);
  double total = 0.0;
  for (const auto& [d, mu] : squarefree_) {
    total += static_cast<double>(mu) * static_cast<double>(ramanujan_sum(d, log)) /
             static_cast<double>(euler_phi(d));
  }
  total *= static_cast<double>(euler_phi(ctx_.p_minus_one())) / static_cast<double>(n);
  return round_checked(total, n, "psi_divisor");
}

u64 IndicatorEvaluator::hit_count(u64 u, u64 d) const {
  check_residue(u, ctx_);
  require_index(d);
  const auto& powers = coprime_powers(d);
  return static_cast<u64>(std::count(powers.begin(), powers.end(), u));
}

// ---- single-shot entry points ------------------------------------------------

IndicatorValue psi_divisor(u64 u, const PrimeContext& ctx) {
  check_residue(u, ctx);
  return IndicatorEvaluator(ctx).psi_divisor(u);
}

IndicatorValue psi_free(u64 u, const PrimeContext& ctx) { return psi_free_d(u, 1, ctx); }

IndicatorValue psi_free_d(u64 u, u64 d, const PrimeContext& ctx) {
  check_residue(u, ctx);
  check_index(d, ctx);
  return IndicatorEvaluator(ctx).psi_free_d(u, d);
}

IndicatorValue psi_free_d(const OrderSpec& spec, const PrimeContext& ctx) {
  return psi_free_d(reduce_mod(spec.base, ctx.p()), spec.index, ctx);
}

TermDecomposition decompose_terms(const OrderSpec& u, const OrderSpec& v, const PrimeContext& ctx) {
  check_index(u.index, ctx);
  check_index(v.index, ctx);
  const u64 ru = reduce_mod(u.base, ctx.p());
  const u64 rv = reduce_mod(v.base, ctx.p());
  const u64 p = ctx.p();

  TermDecomposition t;
  t.p = p;
  t.phi_u = euler_phi(ctx.p_minus_one().quotient(u.index));
  t.phi_v = euler_phi(ctx.p_minus_one().quotient(v.index));
  t.hits_u = count_hits(ru, u.index, ctx);
  t.hits_v = count_hits(rv, v.index, ctx);

  // sum_{a} e(aw/p) = p [w = 0], so the a = 0 row contributes the term count
  // and the a != 0 rows contribute p * hits - term count.
  const i64 zero_u = static_cast<i64>(t.phi_u);
  const i64 zero_v = static_cast<i64>(t.phi_v);
  const i64 nonzero_u = static_cast<i64>(p * t.hits_u) - zero_u;
  const i64 nonzero_v = static_cast<i64>(p * t.hits_v) - zero_v;
  t.main_num = zero_u * zero_v;
  t.e1_num = zero_u * nonzero_v;
  t.e2_num = nonzero_u * zero_v;
  t.e3_num = nonzero_u * nonzero_v;
  return t;
}

}  // namespace ordlab
