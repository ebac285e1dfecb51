#include <gmpxx.h>

#include <cmath>
#include <numeric>
#include <optional>

#include "ordlab/census.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/primes.hpp"
#include "ordlab/summation.hpp"

namespace ordlab {

namespace {

// Fixed block width of the [x, 2x] sweep. Per-block partials are merged in
// block order, so floating totals do not depend on the worker count.
constexpr u64 kBlockWidth = u64{1} << 16;

struct Block {
  u64 lo, hi;
};

std::vector<Block> blocks_of(u64 lo, u64 hi) {
  std::vector<Block> out;
  for (u64 start = lo; start <= hi; start += kBlockWidth) {
    out.push_back({start, std::min(hi, start + kBlockWidth - 1)});
    if (start + kBlockWidth < start) break;
  }
  return out;
}

// Primes of [lo, hi] (inclusive), any progression.
template <typename Visit>
void primes_of(const Block& b, u64 modulus, u64 residue, Visit&& visit) {
  if (b.hi < 3) return;
  PrimeRange range{std::max<u64>(b.lo, 2), b.hi, modulus, residue};
  if (range.hi == range.lo) {
    // PrimeRange needs hi > lo
    if (is_prime(range.lo) && (modulus == 1 || range.lo % modulus == residue)) visit(range.lo);
    return;
  }
  for_each_prime(range, [&](u64 p) { visit(p); });
}

// Residues of the bases mod p, or nullopt when this prime must be skipped.
std::optional<std::vector<u64>> usable(const CensusQuery& q, u64 p) {
  std::vector<u64> residues;
  residues.reserve(q.specs.size());
  for (const auto& s : q.specs) {
    if ((p - 1) % s.index != 0) return std::nullopt;
    try {
      residues.push_back(reduce_mod(s.base, p));
    } catch (const NotInvertible&) {
      return std::nullopt;
    }
  }
  return residues;
}

std::string to_text(const mpq_class& v) { return v.get_str(); }

}  // namespace

void CensusQuery::validate() const {
  if (x < 3) throw DomainError("census: x must be >= 3");
  if (specs.empty() || specs.size() > 8) throw DomainError("census: number of specs k must be in [1, 8]");
  if (!allow_large && x > kCensusCap) {
    throw DomainError("census: x above 10^7 requires allow_large");
  }
  if (2 * x >= kMaxPrime) throw DomainError("census: 2x must be < 2^62");
  if (growth_exponent < 0.0) throw DomainError("census: B must be >= 0");
  std::vector<RationalBase> bases;
  for (const auto& s : specs) {
    if (s.index == 0) throw DomainError("census: indices must be >= 1");
    bases.push_back(s.base);
  }
  const auto adm = is_admissible(bases);
  if (!adm.admissible) {
    std::string w;
    for (auto e : adm.witness) w += (w.empty() ? "" : ",") + std::to_string(e);
    throw InadmissibleTuple("census: bases " + specs_text() + " are multiplicatively dependent (witness " + w + ")");
  }
}

std::string CensusQuery::specs_text() const {
  std::string out;
  for (const auto& s : specs) out += (out.empty() ? "" : ";") + s.to_string();
  return out;
}

double analytic_lower_bound(u64 x, double growth_exponent, std::size_t k) {
  const double lx = std::log(static_cast<double>(x));
  const double kk = static_cast<double>(k);
  return static_cast<double>(x) / (std::pow(lx, 2.0 * growth_exponent * kk + 1.0) * std::pow(std::log(lx), kk));
}

CensusReport count_simultaneous(const CensusQuery& query, unsigned workers) {
  query.validate();
  struct Partial {
    u64 total = 0, matching = 0, skipped = 0;
    CompensatedSum main, e3;
    std::vector<u64> witnesses;
  };
  const auto blocks = blocks_of(query.x, 2 * query.x);
  auto partials = parallel_map(blocks.size(), workers, [&](std::size_t i) {
    Partial part;
    primes_of(blocks[i], 1, 0, [&](u64 p) {
      ++part.total;
      const auto residues = usable(query, p);
      if (!residues) {
        ++part.skipped;
        return;
      }
      const PrimeContext ctx(p);
      const double pd = static_cast<double>(p);
      bool all = true;
      double main = 1.0, e3 = 1.0;
      for (std::size_t s = 0; s < query.specs.size(); ++s) {
        const int hit = indicator_direct((*residues)[s], query.specs[s].index, ctx);
        const double phi = static_cast<double>(euler_phi(ctx.p_minus_one().quotient(query.specs[s].index)));
        all = all && hit == 1;
        main *= phi / pd;
        e3 *= hit - phi / pd;
      }
      part.main.add(main);
      part.e3.add(e3);
      if (all) {
        ++part.matching;
        if (part.witnesses.size() < kMaxWitnesses) part.witnesses.push_back(p);
      }
    });
    return part;
  });

  CensusReport report;
  report.query = query;
  CompensatedSum main, e3;
  for (const auto& part : partials) {
    report.prime_count_total += part.total;
    report.matching += part.matching;
    report.skipped += part.skipped;
    main.add(part.main);
    e3.add(part.e3);
    for (u64 w : part.witnesses) {
      if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(w);
    }
  }
  report.main_term = main.total();
  report.e3_abs = std::abs(e3.total());
  for (const auto& s : query.specs) {
    report.index_product *= s.index;
    report.index_lcm = std::lcm(report.index_lcm, s.index);
  }
  report.analytic_lower_bound = analytic_lower_bound(query.x, query.growth_exponent, query.specs.size());
  report.ratio = static_cast<double>(report.matching) / report.analytic_lower_bound;
  return report;
}

double main_term(u64 x, u64 d, u64 e, unsigned workers) {
  if (x < 3) throw DomainError("main_term: x must be >= 3");
  if (d == 0 || e == 0) throw DomainError("main_term: indices must be >= 1");
  if (2 * x >= kMaxPrime) throw DomainError("main_term: 2x must be < 2^62");
  const u64 modulus = std::lcm(d, e);
  const u64 residue = modulus == 1 ? 0 : 1;
  const auto blocks = blocks_of(x, 2 * x);
  auto partials = parallel_map(blocks.size(), workers, [&](std::size_t i) {
    CompensatedSum sum;
    primes_of(blocks[i], modulus, residue, [&](u64 p) {
      const auto pm1 = factorize(p - 1);
      const double pd = static_cast<double>(p);
      sum.add(static_cast<double>(euler_phi(pm1.quotient(d))) / pd *
              (static_cast<double>(euler_phi(pm1.quotient(e))) / pd));
    });
    return sum;
  });
  CompensatedSum total;
  for (const auto& s : partials) total.add(s);
  return total.total();
}

DecompositionAudit decomposition_audit(const CensusQuery& query, unsigned workers) {
  query.validate();
  if (query.specs.size() != 2) throw DomainError("decomposition_audit: exactly two specs are required");
  struct Partial {
    u64 primes = 0, matching = 0, hit_mismatches = 0;
    u64 u_vanishing = 0, e1_nonzero = 0, v_vanishing = 0, e2_nonzero = 0, full_nonzero = 0;
    mpq_class main, e1, e2, e3;
  };
  const auto& su = query.specs[0];
  const auto& sv = query.specs[1];
  const auto blocks = blocks_of(query.x, 2 * query.x);
  auto partials = parallel_map(blocks.size(), workers, [&](std::size_t i) {
    Partial part;
    primes_of(blocks[i], 1, 0, [&](u64 p) {
      if (!usable(query, p)) return;
      const PrimeContext ctx(p);
      const auto t = decompose_terms(su, sv, ctx);
      const int iu = indicator_direct(su, ctx);
      const int iv = indicator_direct(sv, ctx);
      ++part.primes;
      part.matching += static_cast<u64>(iu * iv);
      if (t.hits_u != static_cast<u64>(iu) || t.hits_v != static_cast<u64>(iv)) ++part.hit_mismatches;
      if (iu == 0) {
        ++part.u_vanishing;
        if (t.e1_num != 0) ++part.e1_nonzero;
        if (t.full_u_block() != 0) ++part.full_nonzero;
      }
      if (iv == 0) {
        ++part.v_vanishing;
        if (t.e2_num != 0) ++part.e2_nonzero;
        if (t.full_v_block() != 0) ++part.full_nonzero;
      }
      const mpz_class den = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
      auto frac = [&](i64 num) {
        mpq_class q(mpz_class(static_cast<long>(num)), den);
        q.canonicalize();
        return q;
      };
      part.main += frac(t.main_num);
      part.e1 += frac(t.e1_num);
      part.e2 += frac(t.e2_num);
      part.e3 += frac(t.e3_num);
    });
    return part;
  });

  DecompositionAudit audit;
  audit.query = query;
  mpq_class main, e1, e2, e3;
  for (const auto& part : partials) {
    audit.primes_audited += part.primes;
    audit.matching += part.matching;
    audit.hit_mismatches += part.hit_mismatches;
    audit.u_vanishing_primes += part.u_vanishing;
    audit.e1_nonzero += part.e1_nonzero;
    audit.v_vanishing_primes += part.v_vanishing;
    audit.e2_nonzero += part.e2_nonzero;
    audit.full_block_nonzero += part.full_nonzero;
    main += part.main;
    e1 += part.e1;
    e2 += part.e2;
    e3 += part.e3;
  }
  audit.identity_exact = (main + e1 + e2 + e3) == mpq_class(mpz_class(static_cast<unsigned long>(audit.matching)));
  audit.main_exact = to_text(main);
  audit.e1_exact = to_text(e1);
  audit.e2_exact = to_text(e2);
  audit.e3_exact = to_text(e3);
  audit.main_total = main.get_d();
  audit.e1_total = e1.get_d();
  audit.e2_total = e2.get_d();
  audit.e3_total = e3.get_d();
  audit.e3_abs = std::abs(audit.e3_total);
  audit.e3_reference = std::pow(static_cast<double>(query.x), 1.0 - 2.0 * 0.1);
  audit.e3_ratio = audit.e3_abs / audit.e3_reference;
  return audit;
}

TotientAverage totient_product_avg(u64 x, u64 modulus, u64 residue, const std::vector<u64>& indices,
                                   unsigned workers) {
  if (x < 3) throw DomainError("totient_product_avg: x must be >= 3");
  if (modulus == 0) throw DomainError("totient_product_avg: q must be >= 1");
  if (indices.empty()) throw DomainError("totient_product_avg: at least one index is required");
  for (u64 d : indices) {
    if (d == 0) throw DomainError("totient_product_avg: indices must be >= 1");
  }
  residue %= modulus;
  if (modulus > 1 && std::gcd(residue, modulus) != 1) {
    throw DomainError("totient_product_avg: a must be coprime to q");
  }
  if (2 * x >= kMaxPrime) throw DomainError("totient_product_avg: 2x must be < 2^62");

  struct Partial {
    u64 primes = 0, non_dividing = 0;
    CompensatedSum sum;
  };
  const auto blocks = blocks_of(x, 2 * x);
  auto partials = parallel_map(blocks.size(), workers, [&](std::size_t i) {
    Partial part;
    primes_of(blocks[i], modulus, residue, [&](u64 p) {
      ++part.primes;
      const auto pm1 = factorize(p - 1);
      double term = 1.0;
      for (u64 d : indices) {
        if ((p - 1) % d != 0) {
          ++part.non_dividing;
          return;
        }
        term *= static_cast<double>(euler_phi(pm1.quotient(d))) / static_cast<double>(p - 1);
      }
      part.sum.add(term);
    });
    return part;
  });

  TotientAverage out;
  out.x = x;
  out.modulus = modulus;
  out.residue = residue;
  out.indices = indices;
  CompensatedSum sum;
  for (const auto& part : partials) {
    out.primes += part.primes;
    out.non_dividing += part.non_dividing;
    sum.add(part.sum);
  }
  out.sum = sum.total();
  const u64 phi_q = modulus == 1 ? 1 : euler_phi(factorize(modulus));
  out.constant_estimate =
      out.sum * static_cast<double>(phi_q) * std::log(static_cast<double>(x)) / static_cast<double>(x);
  return out;
}

}  // namespace ordlab
