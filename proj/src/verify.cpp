#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "ordlab/census.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/expsum.hpp"
#include "ordlab/indicator.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/primes.hpp"
#include "ordlab/report.hpp"
#include "ordlab/stats.hpp"
#include "ordlab/verify.hpp"

namespace ordlab {

namespace {

// ---- brute-force oracles ------------------------------------------------------
// Deliberately naive: trial division and repeated multiplication only.

bool slow_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<u64> slow_odd_primes(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = std::max<u64>(lo, 3); n < hi; ++n) {
    if (n % 2 == 1 && slow_is_prime(n)) out.push_back(n);
  }
  return out;
}

u64 slow_phi(u64 n) {
  u64 count = 0;
  for (u64 k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++count;
  }
  return count;
}

u64 slow_divisor_count(u64 n) {
  u64 count = 0;
  for (u64 k = 1; k <= n; ++k) {
    if (n % k == 0) ++count;
  }
  return count;
}

// Least k >= 1 with r^k = 1 mod n; r must be a unit.
u64 slow_order(u64 r, u64 n) {
  r %= n;
  u64 x = r, k = 1;
  while (x != 1 % n) {
    x = x * r % n;
    ++k;
  }
  return k;
}

u64 slow_inverse(u64 a, u64 p) {
  for (u64 b = 1; b < p; ++b) {
    if (a * b % p == 1) return b;
  }
  return 0;
}

struct SlowSpec {
  i64 num;
  u64 den;
  u64 index;
};

// Independent census: every condition checked by repeated multiplication.
u64 slow_census(u64 x, const std::vector<SlowSpec>& specs) {
  u64 count = 0;
  for (u64 p = x; p <= 2 * x; ++p) {
    if (!slow_is_prime(p) || p == 2) continue;
    bool all = true;
    for (const auto& s : specs) {
      const u64 num = static_cast<u64>((s.num % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p));
      const u64 den = s.den % p;
      if (num == 0 || den == 0 || (p - 1) % s.index != 0) {
        all = false;
        break;
      }
      const u64 r = num * slow_inverse(den, p) % p;
      if (slow_order(r, p) != (p - 1) / s.index) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

// ---- reporting helpers --------------------------------------------------------

class Detail {
 public:
  template <typename T>
  Detail& kv(const std::string& key, const T& value) {
    if (!text_.empty()) text_ += ' ';
    text_ += key + '=';
    if constexpr (std::is_floating_point_v<T>) {
      text_ += format_real(static_cast<double>(value));
    } else if constexpr (std::is_convertible_v<T, std::string>) {
      text_ += std::string(value);
    } else {
      text_ += std::to_string(value);
    }
    return *this;
  }
  Detail& append(const Detail& other) {
    if (!text_.empty() && !other.text_.empty()) text_ += ' ';
    text_ += other.text_;
    return *this;
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
};

struct Limits {
  u64 indicator_pmax;
  u64 kernel_pmax;
  u64 periodic_mmax;
  u64 gauss_pmax;
  u64 double_pmax;
  u64 rho_pmax;
  std::vector<u64> census_ladder;
  std::vector<u64> positivity_ladder;
  u64 chain_pmax;
};

Limits limits_for(VerifyLevel level) {
  if (level == VerifyLevel::full) {
    return {2000, 1000, 300, 500, 1000, 3000, {100, 1000, 10000}, {1000, 10000, 100000}, 10000};
  }
  return {500, 500, 120, 500, 500, 500, {100, 1000, 10000}, {1000, 10000}, 500};
}

CriterionResult make(int id, const char* name, bool passed, const Detail& detail) {
  return CriterionResult{id, name, passed, detail.str()};
}

// ---- criteria -------------------------------------------------------------------

CriterionResult indicator_equivalence(const Limits& lim, unsigned workers) {
  struct Part {
    u64 cases = 0, mismatches = 0;
    double worst = 0.0;  // residual / p
  };
  const auto primes = slow_odd_primes(3, lim.indicator_pmax);
  const auto parts = parallel_map(primes.size(), workers, [&](std::size_t i) {
    Part part;
    const PrimeContext ctx(primes[i]);
    const u64 p = ctx.p();
    const IndicatorEvaluator ev(ctx);
    const auto note = [&](const IndicatorValue& v, int truth) {
      ++part.cases;
      part.worst = std::max(part.worst, v.residual / static_cast<double>(p));
      if (v.rounded != truth || v.residual > 1e-6 * static_cast<double>(p)) ++part.mismatches;
    };
    for (u64 d : ctx.p_minus_one().divisors()) {
      for (u64 u = 1; u < p; ++u) {
        const int truth = indicator_direct(u, d, ctx);
        try {
          note(ev.psi_free_d(u, d), truth);
          if (d == 1) {
            note(ev.psi_free(u), truth);
            note(ev.psi_divisor(u), truth);
          }
        } catch (const IdentityViolation&) {
          ++part.cases;
          ++part.mismatches;
        }
      }
    }
    return part;
  });
  Part total;
  for (const auto& part : parts) {
    total.cases += part.cases;
    total.mismatches += part.mismatches;
    total.worst = std::max(total.worst, part.worst);
  }
  return make(1, "indicator equivalence", total.mismatches == 0,
              Detail()
                  .kv("p_below", lim.indicator_pmax)
                  .kv("primes", primes.size())
                  .kv("cases", total.cases)
                  .kv("mismatches", total.mismatches)
                  .kv("worst_residual_over_p", total.worst));
}

CriterionResult element_count(const Limits& lim, unsigned workers) {
  const auto primes = slow_odd_primes(3, lim.indicator_pmax);
  const auto bad = parallel_map(primes.size(), workers, [&](std::size_t i) {
    const PrimeContext ctx(primes[i]);
    const u64 p = ctx.p();
    u64 mismatches = 0;
    for (u64 d : ctx.p_minus_one().divisors()) {
      u64 count = 0;
      for (u64 u = 1; u < p; ++u) count += static_cast<u64>(indicator_direct(u, d, ctx));
      if (count != slow_phi((p - 1) / d)) ++mismatches;
    }
    return std::pair<u64, u64>(ctx.p_minus_one().divisor_count(), mismatches);
  });
  u64 pairs = 0, mismatches = 0;
  for (const auto& [n, m] : bad) {
    pairs += n;
    mismatches += m;
  }
  return make(2, "element-count identity", mismatches == 0,
              Detail().kv("p_below", lim.indicator_pmax).kv("prime_index_pairs", pairs).kv("mismatches", mismatches));
}

struct GridPoint {
  u64 p, t;
};

std::vector<GridPoint> kernel_grid(const Limits& lim) {
  std::vector<GridPoint> grid;
  for (u64 p : slow_odd_primes(3, lim.kernel_pmax)) {
    const u64 q = next_prime_above(p);
    for (u64 t : {u64{1}, q / 2, q - 1}) {
      if (grid.size() < 500) grid.push_back({p, t});
    }
  }
  return grid;
}

CriterionResult kernel_closed_form(const Limits& lim) {
  const auto grid = kernel_grid(lim);
  u64 gap_violations = 0, bound_violations = 0;
  double worst_gap = 0.0, worst_ratio = 0.0;
  for (const auto& g : grid) {
    const PrimeContext ctx(g.p);
    const u64 q = ctx.q();
    try {
      const auto r = kernel_sum(ctx, g.t);
      const auto w = [&](u64 k) {
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % q) / static_cast<double>(q));
      };
      const std::complex<double> closed = (w(g.t) - w(g.t * g.p)) / (1.0 - w(g.t));
      const double gap = std::abs(r.value - closed);
      const double bound = 2.0 * static_cast<double>(q) / (std::numbers::pi * static_cast<double>(std::min(g.t, q - g.t)));
      worst_gap = std::max(worst_gap, gap);
      worst_ratio = std::max(worst_ratio, r.magnitude / bound);
      if (gap > 1e-9) ++gap_violations;
      if (r.magnitude > bound) ++bound_violations;
      // the reported bound must be the min(t, q - t) form
      if (std::abs(r.bound - bound) > 1e-12 * bound || r.magnitude > r.bound) ++bound_violations;
    } catch (const Error&) {
      ++gap_violations;
    }
  }
  return make(3, "kernel closed form", gap_violations == 0 && bound_violations == 0,
              Detail()
                  .kv("points", grid.size())
                  .kv("gap_violations", gap_violations)
                  .kv("bound_violations", bound_violations)
                  .kv("worst_gap", worst_gap)
                  .kv("worst_bound_ratio", worst_ratio));
}

CriterionResult moebius_agreement(const Limits& lim) {
  u64 points = 0, violations = 0;
  double worst = 0.0;
  const auto check = [&](const auto& evaluate) {
    ++points;
    try {
      const ExpSumResult r = evaluate();
      const double gap = r.alternate ? r.path_gap() : 1.0;
      worst = std::max(worst, gap);
      if (gap > 1e-9) ++violations;
    } catch (const IdentityViolation&) {
      ++violations;
    }
  };
  for (const auto& g : kernel_grid(lim)) {
    const PrimeContext ctx(g.p);
    for (u64 d : {1, 2, 3, 4}) {
      if ((g.p - 1) % d == 0) check([&] { return coprime_kernel_sum(ctx, g.t, d); });
    }
  }
  for (u64 m = 3; m <= lim.periodic_mmax; ++m) {
    u64 w = 2;
    while (std::gcd(w, m) != 1) ++w;
    const auto full = PeriodicElement::make(m, w);
    std::set<u64> cutoffs = {full.period, (full.period + 1) / 2};
    for (u64 cutoff : cutoffs) {
      const auto elem = PeriodicElement::make(m, w, cutoff);
      for (u64 a : std::set<u64>{1, m - 1}) check([&] { return coprime_periodic_sum(elem, a); });
    }
  }
  return make(4, "moebius-expansion agreement", violations == 0,
              Detail().kv("points", points).kv("violations", violations).kv("worst_gap", worst));
}

CriterionResult quadratic_gauss(const Limits& lim) {
  u64 cases = 0, violations = 0;
  double worst = 0.0, worst_complete = 0.0;
  for (u64 p : slow_odd_primes(3, lim.gauss_pmax)) {
    const PrimeContext ctx(p);
    const double root = std::sqrt(static_cast<double>(p));
    for (u64 a = 1; a < p; ++a) {
      const auto r = weil_power_sum(ctx, 2, a);
      const double dev = std::abs(r.magnitude - root);
      ++cases;
      worst = std::max(worst, dev);
      if (dev > 1e-6) ++violations;
      // Adding the z = 0 term gives the complete Gauss sum.
      worst_complete = std::max(worst_complete, std::abs(std::abs(1.0 + r.value) - root));
    }
  }
  return make(5, "quadratic gauss magnitude", violations == 0,
              Detail()
                  .kv("cases", cases)
                  .kv("violations", violations)
                  .kv("worst_deviation", worst)
                  .kv("complete_sum_worst_deviation", worst_complete));
}

CriterionResult double_sum_collapse(const Limits& lim, unsigned workers) {
  struct Part {
    u64 cases = 0, violations = 0;
    double worst = 0.0;  // gap / p
  };
  const auto primes = slow_odd_primes(3, lim.double_pmax);
  const auto parts = parallel_map(primes.size(), workers, [&](std::size_t i) {
    Part part;
    const PrimeContext ctx(primes[i]);
    const u64 p = ctx.p();
    for (u64 d = 1; d <= 6; ++d) {
      if ((p - 1) % d != 0) continue;
      for (u64 u : {2, 3, 5}) {
        if (u % p == 0) continue;
        const u64 m = (p - 1) / d;
        const double oracle = static_cast<double>(p) * (slow_order(u % p, p) == m ? 1.0 : 0.0) -
                              static_cast<double>(slow_phi(m));
        ++part.cases;
        try {
          const auto r = double_sum(u % p, d, ctx);
          const double gap = std::abs(r.value - std::complex<double>(oracle, 0.0));
          part.worst = std::max(part.worst, gap / static_cast<double>(p));
          if (gap > 1e-6 * static_cast<double>(p)) ++part.violations;
        } catch (const IdentityViolation&) {
          ++part.violations;
        }
      }
    }
    return part;
  });
  Part total;
  for (const auto& part : parts) {
    total.cases += part.cases;
    total.violations += part.violations;
    total.worst = std::max(total.worst, part.worst);
  }
  return make(6, "double-sum collapse", total.violations == 0,
              Detail()
                  .kv("p_below", lim.double_pmax)
                  .kv("cases", total.cases)
                  .kv("violations", total.violations)
                  .kv("worst_gap_over_p", total.worst));
}

CriterionResult rho_divisor_bound(const Limits& lim, unsigned workers) {
  struct Part {
    u64 cases = 0, violations = 0;
    double worst_hard = 0.0, worst_log = 0.0;
  };
  const auto primes = slow_odd_primes(3, lim.rho_pmax);
  const auto parts = parallel_map(primes.size(), workers, [&](std::size_t i) {
    Part part;
    const PrimeContext ctx(primes[i]);
    const u64 p = ctx.p();
    const double root = std::sqrt(static_cast<double>(p));
    for (u64 d : {1, 2, 3, 4}) {
      if ((p - 1) % d != 0) continue;
      const double hard = static_cast<double>(slow_divisor_count((p - 1) / d)) * (root + 1.0);
      for (u64 a : std::set<u64>{1, 2, 3, p - 1}) {
        if (a >= p) continue;
        ++part.cases;
        try {
          const auto r = rho(ctx, d, a);
          part.worst_hard = std::max(part.worst_hard, r.magnitude / hard);
          if (r.magnitude > hard) ++part.violations;
          if (p >= 100) part.worst_log = std::max(part.worst_log, r.magnitude / (root * std::pow(std::log(p), 3)));
        } catch (const IdentityViolation&) {
          ++part.violations;
        }
      }
    }
    return part;
  });
  Part total;
  for (const auto& part : parts) {
    total.cases += part.cases;
    total.violations += part.violations;
    total.worst_hard = std::max(total.worst_hard, part.worst_hard);
    total.worst_log = std::max(total.worst_log, part.worst_log);
  }
  return make(7, "rho divisor bound", total.violations == 0,
              Detail()
                  .kv("p_below", lim.rho_pmax)
                  .kv("cases", total.cases)
                  .kv("violations", total.violations)
                  .kv("worst_hard_ratio", total.worst_hard)
                  .kv("max_rho_over_sqrtp_log3p", total.worst_log));
}

struct NamedQuery {
  std::vector<SlowSpec> slow;
  std::vector<OrderSpec> specs;
};

std::vector<NamedQuery> census_queries() {
  const auto spec = [](i64 u, u64 d) { return OrderSpec::make(RationalBase::make(u), d); };
  return {
      {{{3, 1, 1}, {2, 1, 2}}, {spec(3, 1), spec(2, 2)}},
      {{{2, 1, 1}}, {spec(2, 1)}},
      {{{3, 1, 1}, {5, 1, 1}, {2, 1, 2}}, {spec(3, 1), spec(5, 1), spec(2, 2)}},
  };
}

CriterionResult census_oracle(const Limits& lim, unsigned workers) {
  u64 runs = 0, mismatches = 0;
  Detail detail;
  for (const auto& q : census_queries()) {
    for (u64 x : lim.census_ladder) {
      CensusQuery query;
      query.x = x;
      query.specs = q.specs;
      const auto report = count_simultaneous(query, workers);
      const u64 oracle = slow_census(x, q.slow);
      ++runs;
      if (report.matching != oracle) ++mismatches;
      detail.kv(query.specs_text() + "@" + std::to_string(x), std::to_string(report.matching) + "/" +
                                                                  std::to_string(oracle));
    }
  }
  return make(8, "census oracle equality", mismatches == 0,
              Detail().kv("runs", runs).kv("mismatches", mismatches).append(detail));
}

CriterionResult positivity_ladder_check(const Limits& lim, unsigned workers) {
  bool positive = true;
  Detail detail;
  for (i64 u : {3, 5, 7}) {
    for (u64 x : lim.positivity_ladder) {
      CensusQuery query;
      query.x = x;
      query.specs = {OrderSpec::make(RationalBase::make(u), 1), OrderSpec::make(RationalBase::make(2), 2)};
      const auto report = count_simultaneous(query, workers);
      if (report.matching == 0) positive = false;
      detail.kv("u" + std::to_string(u) + "@" + std::to_string(x),
                std::to_string(report.matching) + ":" + format_real(report.ratio));
    }
  }
  return make(9, "two-base positivity", positive, detail);
}

CriterionResult decomposition(unsigned workers) {
  bool identity = true;
  u64 hit_mismatches = 0, u_vanish = 0, e1_nonzero = 0, v_vanish = 0, e2_nonzero = 0, full_nonzero = 0;
  for (u64 x : {100, 1000}) {
    CensusQuery query;
    query.x = x;
    query.specs = {OrderSpec::make(RationalBase::make(3), 1), OrderSpec::make(RationalBase::make(2), 2)};
    const auto audit = decomposition_audit(query, workers);
    identity = identity && audit.identity_exact;
    hit_mismatches += audit.hit_mismatches;
    u_vanish += audit.u_vanishing_primes;
    e1_nonzero += audit.e1_nonzero;
    v_vanish += audit.v_vanishing_primes;
    e2_nonzero += audit.e2_nonzero;
    full_nonzero += audit.full_block_nonzero;
  }
  const bool vanishing = e1_nonzero == 0 && e2_nonzero == 0;
  return make(10, "decomposition audit", identity && hit_mismatches == 0 && vanishing,
              Detail()
                  .kv("identity", identity ? "exact" : "broken")
                  .kv("hit_mismatches", hit_mismatches)
                  .kv("e1_nonzero_where_u_vanishes", std::to_string(e1_nonzero) + "/" + std::to_string(u_vanish))
                  .kv("e2_nonzero_where_v_vanishes", std::to_string(e2_nonzero) + "/" + std::to_string(v_vanish))
                  .kv("full_block_nonzero", full_nonzero));
}

CriterionResult main_term_oracle(unsigned workers) {
  const double hand = 16.0 / 121 + 16.0 / 169 + 64.0 / 289 + 36.0 / 361;
  const double small = main_term(10, 1, 1, workers);
  const double small_gap = std::abs(small - hand);
  double worst = 0.0;
  for (auto [d, e] : {std::pair<u64, u64>{1, 1}, {2, 2}, {2, 3}}) {
    const u64 x = 10000;
    const u64 l = std::lcm(d, e);
    long double oracle = 0.0L;
    for (u64 p = x; p <= 2 * x; ++p) {
      if (p % 2 == 0 || !slow_is_prime(p) || (p - 1) % l != 0) continue;
      const long double num =
          static_cast<long double>(slow_phi((p - 1) / d)) * static_cast<long double>(slow_phi((p - 1) / e));
      oracle += num / (static_cast<long double>(p) * static_cast<long double>(p));
    }
    worst = std::max(worst, static_cast<double>(std::abs(static_cast<long double>(main_term(x, d, e, workers)) - oracle)));
  }
  return make(11, "main term oracle", small_gap <= 1e-12 && worst <= 1e-9,
              Detail().kv("hand_gap", small_gap).kv("oracle_gap_at_10000", worst));
}

// Exhaustive equal-order pair counts with orders from repeated multiplication.
struct PairCounts {
  u64 all_hits = 0;
  u64 coprime_pairs = 0, coprime_hits = 0;
};

PairCounts slow_pairs(u64 p) {
  std::vector<u64> orders(p);
  for (u64 a = 1; a < p; ++a) orders[a] = slow_order(a, p);
  PairCounts c;
  for (u64 a = 1; a < p; ++a) {
    for (u64 b = 1; b < p; ++b) {
      if (orders[a] != orders[b]) {
        if (a >= 2 && b >= 2 && std::gcd(a, b) == 1) ++c.coprime_pairs;
        continue;
      }
      ++c.all_hits;
      if (a >= 2 && b >= 2 && std::gcd(a, b) == 1) {
        ++c.coprime_pairs;
        ++c.coprime_hits;
      }
    }
  }
  return c;
}

constexpr u64 kVerifySeed = 0x5eed2024;

CriterionResult probability_chain(const Limits& lim) {
  u64 chain_failures = 0, exact_mismatches = 0, checked = 0;
  double worst_chain = 0.0;  // alpha2 / phi_ratio
  for (u64 p : slow_odd_primes(3, lim.chain_pmax)) {
    const auto r = equal_order_probability_exact(p);
    ++checked;
    // recompute the sum of phi(d)^2 by trial division
    u64 squares = 0;
    for (u64 d = 1; d < p; ++d) {
      if ((p - 1) % d == 0) {
        const u64 phi = slow_phi(d);
        squares += phi * phi;
      }
    }
    const u64 den = (p - 1) * (p - 1);
    if (static_cast<unsigned __int128>(r.alpha2_num) * den != static_cast<unsigned __int128>(squares) * r.alpha2_den) {
      ++exact_mismatches;
    }
    const u64 phi_n = slow_phi(p - 1);
    const bool chain = squares >= 1 && squares <= (p - 1) * phi_n && 2 * phi_n <= p - 1;
    if (!chain || !r.chain_holds) ++chain_failures;
    worst_chain = std::max(worst_chain, r.alpha2 / r.phi_ratio);
    if (p < 200) {
      const auto c = slow_pairs(p);
      if (static_cast<unsigned __int128>(c.all_hits) * r.alpha2_den !=
          static_cast<unsigned __int128>(r.alpha2_num) * den) {
        ++exact_mismatches;
      }
    }
  }
  double worst_sigma = 0.0;
  bool sampled_ok = true;
  const u64 trials = 100000;
  for (u64 p : {7, 101}) {
    const auto c = slow_pairs(p);
    const double ref = static_cast<double>(c.coprime_hits) / static_cast<double>(c.coprime_pairs);
    const auto r = equal_order_probability_sampled(p, trials, kVerifySeed, 1);
    const double sigma = std::sqrt(ref * (1.0 - ref) / static_cast<double>(trials));
    const double z = std::abs(r.sampled->estimate - ref) / sigma;
    worst_sigma = std::max(worst_sigma, z);
    if (z > 4.0) sampled_ok = false;
  }
  return make(12, "probability chain", chain_failures == 0 && exact_mismatches == 0 && sampled_ok,
              Detail()
                  .kv("primes", checked)
                  .kv("chain_failures", chain_failures)
                  .kv("exact_mismatches", exact_mismatches)
                  .kv("max_alpha2_over_phi_ratio", worst_chain)
                  .kv("sampled_worst_sigmas", worst_sigma));
}

CriterionResult average_order() {
  const auto t10 = avg_order(10, RationalBase::make(2));
  const bool t10_ok = t10.order_sum == 15 && t10.value == 1.5;
  u64 mismatches = 0;
  Detail detail;
  detail.kv("T_2(10)", t10.value);
  for (i64 u : {2, 3, 5}) {
    u64 oracle = 0;
    for (u64 n = 2; n <= 1000; ++n) {
      if (std::gcd(static_cast<u64>(u), n) == 1) oracle += slow_order(static_cast<u64>(u) % n, n);
    }
    if (avg_order(1000, RationalBase::make(u)).order_sum != oracle) ++mismatches;
  }
  bool growth = true;
  for (i64 u : {2, 3}) {
    const double small = avg_order(1000, RationalBase::make(u)).value;
    const double large = avg_order(10000, RationalBase::make(u)).value;
    if (!(large > small)) growth = false;
    detail.kv("T_" + std::to_string(u), format_real(small) + "->" + format_real(large));
  }
  detail.kv("oracle_mismatches", mismatches);
  return make(13, "average order oracle", t10_ok && mismatches == 0 && growth, detail);
}

std::vector<CriterionResult> run_body(VerifyLevel level, unsigned workers) {
  const Limits lim = limits_for(level);
  return {
      indicator_equivalence(lim, workers),
      element_count(lim, workers),
      kernel_closed_form(lim),
      moebius_agreement(lim),
      quadratic_gauss(lim),
      double_sum_collapse(lim, workers),
      rho_divisor_bound(lim, workers),
      census_oracle(lim, workers),
      positivity_ladder_check(lim, workers),
      decomposition(workers),
      main_term_oracle(workers),
      probability_chain(lim),
      average_order(),
  };
}

std::string render_lines(const std::vector<CriterionResult>& criteria) {
  std::ostringstream out;
  for (const auto& c : criteria) {
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s  %s", c.id, c.passed ? "PASS" : "FAIL", c.name.c_str());
    out << head << " | " << c.detail << '\n';
  }
  return out.str();
}

std::string census_csv(const Limits& lim, unsigned workers) {
  std::vector<CensusReport> reports;
  for (const auto& q : census_queries()) {
    CensusQuery query;
    query.x = lim.census_ladder.back();
    query.specs = q.specs;
    reports.push_back(count_simultaneous(query, workers));
  }
  std::ostringstream out;
  write_csv(out, census_table(reports));
  return out.str();
}

}  // namespace

std::optional<VerifyLevel> parse_level(std::string_view text) {
  if (text == "quick") return VerifyLevel::quick;
  if (text == "full") return VerifyLevel::full;
  return std::nullopt;
}

const char* level_name(VerifyLevel level) { return level == VerifyLevel::full ? "full" : "quick"; }

bool VerifySummary::all_passed() const { return passed_count() == criteria.size(); }

std::size_t VerifySummary::passed_count() const {
  return static_cast<std::size_t>(std::count_if(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; }));
}

std::string VerifySummary::render() const {
  std::string out = render_lines(criteria);
  out += "summary: " + std::to_string(passed_count()) + "/" + std::to_string(criteria.size()) + " passed (level " +
         level_name(level) + ")\n";
  return out;
}

VerifySummary verify_suite(VerifyLevel level, unsigned workers) {
  workers = std::max(1u, workers);
  VerifySummary summary;
  summary.level = level;
  summary.criteria = run_body(level, workers);

  const Limits lim = limits_for(level);
  const std::string body = render_lines(summary.criteria);
  const std::string body_one = workers == 1 ? body : render_lines(run_body(level, 1));
  const std::string body_four = workers == 4 ? body : render_lines(run_body(level, 4));
  const bool census_same = census_csv(lim, 1) == census_csv(lim, 4);
  const PrimeRange range{1'000'000, 2'000'000, 1, 0};
  const bool primes_same = primes_in_range(range, 1) == primes_in_range(range, 4);
  const auto s1 = equal_order_probability_sampled(101, 20000, kVerifySeed, 4);
  const auto s2 = equal_order_probability_sampled(101, 20000, kVerifySeed, 4);
  const bool sampler_same = s1.sampled->hits == s2.sampled->hits;
  const bool verify_same = body_one == body_four;
  summary.criteria.push_back(make(14, "determinism", census_same && primes_same && sampler_same && verify_same,
                                  Detail()
                                      .kv("census_csv", census_same ? "identical" : "differs")
                                      .kv("prime_range", primes_same ? "identical" : "differs")
                                      .kv("sampler_repeat", sampler_same ? "identical" : "differs")
                                      .kv("verify_text", verify_same ? "identical" : "differs")));
  return summary;
}

}  // namespace ordlab
