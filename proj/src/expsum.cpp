#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "ordlab/errors.hpp"
#include "ordlab/expsum.hpp"
#include "ordlab/summation.hpp"

namespace ordlab {

namespace {

using cplx = std::complex<double>;

constexpr u64 kTableLimit = u64{1} << 24;

// e(k/m) lookups; tabulated for moderate m.
class Roots {
 public:
  explicit Roots(u64 m) : m_(m) {
    if (m_ <= kTableLimit) {
      table_.resize(m_);
      for (u64 j = 0; j < m_; ++j) table_[j] = unit_root(j, m_);
    }
  }
  cplx operator()(u64 k) const { return table_.empty() ? unit_root(k, m_) : table_[k % m_]; }

 private:
  u64 m_;
  std::vector<cplx> table_;
};

double log_d(u64 v) { return std::log(static_cast<double>(v)); }
double sqrt_d(u64 v) { return std::sqrt(static_cast<double>(v)); }

ExpSumResult finish(cplx value, double bound, u64 terms, const char* what,
                    std::optional<double> hard = std::nullopt, std::optional<cplx> alternate = std::nullopt,
                    double path_tolerance = kPathTolerance) {
  ExpSumResult r;
  r.value = value;
  r.magnitude = std::abs(value);
  r.bound = bound;
  r.ratio = bound > 0.0 ? r.magnitude / bound : std::numeric_limits<double>::infinity();
  r.term_count = terms;
  r.hard_bound = hard;
  r.alternate = alternate;
  const double slack = 1e-9 * (1.0 + static_cast<double>(terms));
  if (r.magnitude > static_cast<double>(terms) + slack) {
    throw IdentityViolation(std::string(what) + ": magnitude exceeds the term count");
  }
  if (hard && r.magnitude > *hard + slack) {
    throw IdentityViolation(std::string(what) + ": magnitude " + std::to_string(r.magnitude) +
                            " exceeds the provable bound " + std::to_string(*hard));
  }
  if (alternate && r.path_gap() > path_tolerance) {
    throw IdentityViolation(std::string(what) + ": evaluation routes disagree by " + std::to_string(r.path_gap()));
  }
  return r;
}

void check_frequency(u64 t, u64 q) {
  if (t == 0 || t >= q) {
    throw DomainError("frequency t=" + std::to_string(t) + " must lie in [1, q-1] = [1, " + std::to_string(q - 1) + "]");
  }
}

void check_divisor(u64 d, const PrimeContext& ctx) {
  if (d == 0 || (ctx.p() - 1) % d != 0) {
    throw IndexNotDividing("d=" + std::to_string(d) + " does not divide p-1=" + std::to_string(ctx.p() - 1));
  }
}

void check_a(u64 a, u64 modulus) {
  if (a == 0 || a >= modulus) {
    throw DomainError("a=" + std::to_string(a) + " must lie in [1, " + std::to_string(modulus - 1) + "]");
  }
}

// Path tolerance grows with the sum length; fixed at 1e-9 up to 10^4 terms.
double scaled_tolerance(u64 terms) { return kPathTolerance * std::max(1.0, static_cast<double>(terms) / 1e4); }

// tau^{dn} for n <= (p-1)/d with gcd(n, (p-1)/d) = 1, in increasing n.
std::vector<u64> coprime_powers(const PrimeContext& ctx, u64 d) {
  const u64 p = ctx.p();
  const u64 m = (p - 1) / d;
  const u64 step = pow_mod_u(ctx.tau(), d, p);
  std::vector<u64> out;
  u64 x = 1;
  for (u64 n = 1; n <= m; ++n) {
    x = mul_mod(x, step, p);
    if (std::gcd(n, m) == 1) out.push_back(x);
  }
  return out;
}

cplx rho_value(const std::vector<u64>& powers, u64 a, u64 p, const Roots& roots) {
  PairwiseSum<cplx> sum;
  for (u64 x : powers) sum.add(roots(mul_mod(a, x, p)));
  return sum.total();
}

}  // namespace

cplx unit_root(u64 k, u64 m) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % m) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

ExpSumResult kernel_sum(const PrimeContext& ctx, u64 t) {
  const u64 p = ctx.p(), q = ctx.q();
  check_frequency(t, q);
  PairwiseSum<cplx> sum;
  u64 e = 0;
  for (u64 n = 1; n < p; ++n) {
    e += t;
    if (e >= q) e -= q;
    sum.add(unit_root(e, q));
  }
  const cplx wt = unit_root(t, q);
  const cplx closed = (wt - unit_root(mul_mod(t, p, q), q)) / (1.0 - wt);
  const double bound = 2.0 * static_cast<double>(q) / (std::numbers::pi * static_cast<double>(std::min(t, q - t)));
  return finish(sum.total(), bound, p - 1, "kernel_sum", std::nullopt, closed, scaled_tolerance(p));
}

ExpSumResult coprime_kernel_sum(const PrimeContext& ctx, u64 t, u64 d) {
  const u64 p = ctx.p(), q = ctx.q();
  check_frequency(t, q);
  check_divisor(d, ctx);
  const u64 m = (p - 1) / d;

  PairwiseSum<cplx> direct;
  u64 terms = 0;
  for (u64 n = 1; n <= m; ++n) {
    if (std::gcd(n, m) == 1) {
      direct.add(unit_root(mul_mod(t, n, q), q));
      ++terms;
    }
  }

  // sum_{r | m} mu(r) sum_{j <= m/r} omega^{t r j}, inner sums in closed form.
  cplx expanded = 0.0;
  for (const auto& [r, mu] : ctx.p_minus_one().quotient(d).squarefree_divisors()) {
    const u64 step = mul_mod(t, r, q);
    const cplx w = unit_root(step, q);
    const cplx inner = (w - unit_root(mul_mod(step, m / r + 1, q), q)) / (1.0 - w);
    expanded += static_cast<double>(mu) * inner;
  }

  const double tm = static_cast<double>(std::min(t, q - t));
  const double bound = p >= 100 ? 4.0 * static_cast<double>(q) * std::log(log_d(p)) / (std::numbers::pi * tm)
                                : static_cast<double>(terms);
  return finish(direct.total(), bound, terms, "coprime_kernel_sum", std::nullopt, expanded, scaled_tolerance(m));
}

ExpSumResult gauss_resolvent(const PrimeContext& ctx) { return power_resolvent(ctx, 1); }

ExpSumResult weil_power_sum(const PrimeContext& ctx, u64 d, u64 a) {
  const u64 p = ctx.p();
  if (d == 0) throw DomainError("weil_power_sum: degree must be >= 1");
  check_a(a, p);
  const Roots roots(p);
  PairwiseSum<cplx> sum;
  for (u64 z = 1; z < p; ++z) sum.add(roots(mul_mod(a, pow_mod_u(z, d, p), p)));
  const double bound = 2.0 * static_cast<double>(d) * sqrt_d(p) * log_d(p);
  const double classical = static_cast<double>(d - 1) * sqrt_d(p) + 1.0;
  return finish(sum.total(), bound, p - 1, "weil_power_sum", classical);
}

ExpSumResult power_resolvent(const PrimeContext& ctx, u64 d) {
  const u64 p = ctx.p(), q = ctx.q();
  check_divisor(d, ctx);
  const Roots roots(p);
  const u64 step = pow_mod_u(ctx.tau(), d, p);
  PairwiseSum<cplx> sum;
  u64 x = 1;
  for (u64 t = 1; t < q; ++t) {
    x = mul_mod(x, step, p);  // tau^{dt}, exponent implicitly mod p - 1
    sum.add(unit_root(t, q) * roots(x));
  }
  const double bound = 2.0 * static_cast<double>(d) * sqrt_d(q) * log_d(q);
  return finish(sum.total(), bound, q - 1, d == 1 ? "gauss_resolvent" : "power_resolvent");
}

ExpSumResult incomplete_sum(const PrimeContext& ctx, u64 d, u64 a, u64 x) {
  const u64 p = ctx.p();
  check_divisor(d, ctx);
  check_a(a, p);
  if (x == 0 || x >= p) throw DomainError("incomplete_sum: x must lie in [1, p-1]");
  const Roots roots(p);
  const u64 step = pow_mod_u(ctx.tau(), d, p);
  PairwiseSum<cplx> sum;
  u64 y = 1;
  for (u64 n = 1; n <= x; ++n) {
    y = mul_mod(y, step, p);
    sum.add(roots(mul_mod(a, y, p)));
  }
  const double lp = log_d(p);
  return finish(sum.total(), sqrt_d(p) * lp * lp * lp, x, "incomplete_sum");
}

ExpSumResult rho(const PrimeContext& ctx, u64 d, u64 a) {
  const u64 p = ctx.p();
  check_divisor(d, ctx);
  check_a(a, p);
  const auto powers = coprime_powers(ctx, d);
  const Roots roots(p);
  const double lp = log_d(p);
  const double hard = static_cast<double>(ctx.p_minus_one().quotient(d).divisor_count()) * (sqrt_d(p) + 1.0);
  return finish(rho_value(powers, a, p, roots), sqrt_d(p) * lp * lp * lp, powers.size(), "rho", hard);
}

ExpSumResult rho_diff(const PrimeContext& ctx, u64 d, u64 a) {
  const auto with_a = rho(ctx, d, a);
  const auto with_one = rho(ctx, d, 1);
  const double lp = log_d(ctx.p());
  return finish(with_a.value - with_one.value, 16.0 * sqrt_d(ctx.p()) * lp * lp * lp * lp, 2 * with_a.term_count,
                "rho_diff");
}

PeriodicElement PeriodicElement::make(u64 m, u64 w, u64 cutoff) {
  if (m < 2) throw DomainError("periodic element: modulus m must be >= 2");
  w %= m;
  if (std::gcd(w, m) != 1) throw DomainError("periodic element: w must be coprime to m");
  const u64 phi = euler_phi(factorize(m));
  const u64 period = order_in_group(w, m, factor_or_one(phi));
  if (cutoff == 0) cutoff = period;
  if (cutoff > period) throw DomainError("periodic element: P must not exceed the period Q=" + std::to_string(period));
  return PeriodicElement{m, w, period, cutoff};
}

ExpSumResult periodic_sum(const PeriodicElement& elem, u64 a) {
  check_a(a, elem.m);
  const Roots roots(elem.m);
  PairwiseSum<cplx> sum;
  u64 x = 1;
  for (u64 n = 1; n <= elem.cutoff; ++n) {
    x = mul_mod(x, elem.w, elem.m);
    sum.add(roots(mul_mod(a, x, elem.m)));
  }
  const double eps = std::log(static_cast<double>(elem.cutoff)) / log_d(elem.m);
  const double bound = std::pow(static_cast<double>(elem.cutoff), 1.0 - eps);
  return finish(sum.total(), bound, elem.cutoff, "periodic_sum");
}

ExpSumResult coprime_periodic_sum(const PeriodicElement& elem, u64 a) {
  check_a(a, elem.m);
  const Roots roots(elem.m);
  const auto phi = factor_or_one(euler_phi(factorize(elem.m)));

  PairwiseSum<cplx> direct;
  u64 terms = 0;
  u64 x = 1;
  for (u64 n = 1; n <= elem.cutoff; ++n) {
    x = mul_mod(x, elem.w, elem.m);
    if (std::gcd(n, phi.value()) == 1) {
      direct.add(roots(mul_mod(a, x, elem.m)));
      ++terms;
    }
  }

  // sum_{r | phi(m)} mu(r) sum_{n <= P, r | n} e(a w^n / m)
  cplx expanded = 0.0;
  for (const auto& [r, mu] : phi.squarefree_divisors()) {
    if (r > elem.cutoff) continue;
    const u64 step = pow_mod_u(elem.w, r, elem.m);
    PairwiseSum<cplx> inner;
    u64 y = 1;
    for (u64 j = 1; j <= elem.cutoff / r; ++j) {
      y = mul_mod(y, step, elem.m);
      inner.add(roots(mul_mod(a, y, elem.m)));
    }
    expanded += static_cast<double>(mu) * inner.total();
  }

  const double two_eps = std::log(static_cast<double>(elem.cutoff)) / log_d(elem.m);
  const double bound = std::pow(static_cast<double>(elem.m), two_eps / 2.0) *
                       std::pow(static_cast<double>(elem.cutoff), 1.0 - two_eps);
  return finish(direct.total(), bound, terms, "coprime_periodic_sum", std::nullopt, expanded,
                scaled_tolerance(elem.cutoff));
}

ExpSumResult double_sum(u64 u, u64 d, const PrimeContext& ctx) {
  const u64 p = ctx.p();
  check_divisor(d, ctx);
  check_a(u, p);
  const auto powers = coprime_powers(ctx, d);
  const Roots roots(p);
  PairwiseSum<cplx> sum;
  for (u64 a = 1; a < p; ++a) {
    sum.add(roots(p - mul_mod(a, u, p)) * rho_value(powers, a, p, roots));
  }
  const double collapse =
      static_cast<double>(p) * indicator_direct(u, d, ctx) - static_cast<double>(powers.size());
  const double bound = std::pow(static_cast<double>(p), 0.9);
  return finish(sum.total(), bound, (p - 1) * powers.size(), "double_sum", std::nullopt, cplx(collapse, 0.0),
                1e-6 * static_cast<double>(p));
}

ExpSumResult double_sum(const OrderSpec& spec, const PrimeContext& ctx) {
  return double_sum(reduce_mod(spec.base, ctx.p()), spec.index, ctx);
}

}  // namespace ordlab
