#pragma once

#include <complex>
#include <optional>
#include <string>

#include "ordlab/arith.hpp"
#include "ordlab/indicator.hpp"

namespace ordlab {

// An evaluated exponential sum next to the bound it is measured against.
struct ExpSumResult {
  std::complex<double> value;
  double magnitude = 0.0;
  double bound = 0.0;  // reference bound at these parameters
  double ratio = 0.0;  // magnitude / bound
  u64 term_count = 0;
  // A provable bound; the evaluating function throws IdentityViolation when
  // the magnitude exceeds it.
  std::optional<double> hard_bound;
  // The same sum through an independent route (closed form, Moebius
  // expansion, orthogonality collapse) when one exists.
  std::optional<std::complex<double>> alternate;

  double path_gap() const { return alternate ? std::abs(value - *alternate) : 0.0; }
};

// Agreement required between the two evaluation routes of one sum.
inline constexpr double kPathTolerance = 1e-9;

// e(k / m) = exp(2 pi i k / m) with k reduced mod m first.
std::complex<double> unit_root(u64 k, u64 m);

// sum_{n=1}^{p-1} omega^{tn}, omega = e(1/q); alternate is the geometric closed
// form. Bound 2q / (pi min(t, q - t)).
ExpSumResult kernel_sum(const PrimeContext& ctx, u64 t);

// sum over n <= (p-1)/d coprime to (p-1)/d of omega^{tn}; alternate is the
// Moebius expansion with closed-form inner sums.
ExpSumResult coprime_kernel_sum(const PrimeContext& ctx, u64 t, u64 d);

// sum_{t=1}^{q-1} e(t/q) e(tau^t / p). Bound 2 sqrt(q) log q.
ExpSumResult gauss_resolvent(const PrimeContext& ctx);

// sum_{z=1}^{p-1} e(a z^d / p). Bound 2 d sqrt(p) log p; hard bound
// (d - 1) sqrt(p) + 1.
ExpSumResult weil_power_sum(const PrimeContext& ctx, u64 d, u64 a);

// sum_{t=1}^{q-1} e(t/q) e(tau^{dt} / p), d | p - 1. Bound 2 d sqrt(q) log q.
ExpSumResult power_resolvent(const PrimeContext& ctx, u64 d);

// R(d, x) = sum_{n<=x} e(a tau^{dn} / p). Bound sqrt(p) log^3 p.
ExpSumResult incomplete_sum(const PrimeContext& ctx, u64 d, u64 a, u64 x);

// rho(a, d, p) = sum over n <= (p-1)/d coprime to (p-1)/d of
// e(a tau^{dn} / p). Bound sqrt(p) log^3 p; hard bound
// tau0((p-1)/d) (sqrt(p) + 1).
ExpSumResult rho(const PrimeContext& ctx, u64 d, u64 a);

// rho(a, d, p) - rho(1, d, p). Bound 16 sqrt(p) log^4 p.
ExpSumResult rho_diff(const PrimeContext& ctx, u64 d, u64 a);

// w in (Z/mZ)^* with exact order Q, summed up to P <= Q.
struct PeriodicElement {
  u64 m = 0;
  u64 w = 0;
  u64 period = 0;  // Q
  u64 cutoff = 0;  // P

  // Computes Q; throws DomainError unless m >= 2, gcd(w, m) = 1 and
  // 1 <= P <= Q (P = 0 selects P = Q).
  static PeriodicElement make(u64 m, u64 w, u64 cutoff = 0);
};

// sum_{n=1}^{P} e(a w^n / m). Bound P^{1 - eps}, eps = log P / log m.
ExpSumResult periodic_sum(const PeriodicElement& elem, u64 a);

// Same sum restricted to gcd(n, phi(m)) = 1; alternate is the Moebius
// expansion over phi(m). Bound m^eps P^{1 - 2 eps}, 2 eps = log P / log m.
ExpSumResult coprime_periodic_sum(const PeriodicElement& elem, u64 a);

// T(p) = sum_{a=1}^{p-1} e(-au/p) rho(a, d, p) for the spec's base and index;
// alternate is the orthogonality collapse p * indicator - phi((p-1)/d), which
// must agree to 1e-6 p. Bound p^{0.9}.
ExpSumResult double_sum(const OrderSpec& spec, const PrimeContext& ctx);
ExpSumResult double_sum(u64 u, u64 d, const PrimeContext& ctx);

}  // namespace ordlab
