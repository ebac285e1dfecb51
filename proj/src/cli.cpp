#include <fstream>
#include <iostream>
#include <numeric>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordlab/census.hpp"
#include "ordlab/cli.hpp"
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

struct Flags {
  u64 p = 0, q = 1, d = 1, e = 1, x = 0, t = 0, a = 1, m = 0, w = 0, P = 0;
  u64 lo = 0, hi = 0, trials = 0, seed = 1;
  unsigned workers = 0;
  double B = 0.0;
  bool allow_large = false;
  std::string u = "2", v, kind, level = "quick", format = "csv", output;
  std::vector<std::string> us, specs;
  std::vector<u64> indices;
};

const std::vector<std::string> kExpSumKinds = {"kernel", "coprime-kernel", "gauss",    "weil",
                                               "resolvent", "incomplete", "rho",      "rho-diff",
                                               "periodic",  "coprime-periodic", "double"};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", f.output, "write the report to this file instead of stdout");
  cmd->add_option("--workers", f.workers, "worker threads (overrides ORDLAB_THREADS)")->check(CLI::PositiveNumber);
}

OutputFormat format_of(const Flags& f) { return f.format == "json" ? OutputFormat::json : OutputFormat::csv; }

std::vector<OrderSpec> parse_specs(const std::vector<std::string>& texts) {
  std::vector<OrderSpec> specs;
  for (const auto& s : texts) specs.push_back(OrderSpec::parse(s));
  return specs;
}

Table order_report(const Flags& f) {
  const PrimeContext ctx(f.p);
  const auto u = RationalBase::parse(f.u);
  Table t;
  t.columns = {"p", "u", "ord", "index"};
  t.add({f.p, u.to_string(), order_mod(u, ctx), index_mod(u, ctx)});
  return t;
}

Table primitive_root_report(const Flags& f) {
  const PrimeContext ctx(f.p);
  Table t;
  t.columns = {"p", "tau", "q"};
  t.add({f.p, ctx.tau(), ctx.q()});
  return t;
}

std::string join_ints(const std::vector<i64>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + std::to_string(values[i]);
  return out;
}

Table admissible_report(const Flags& f) {
  std::vector<RationalBase> tuple;
  std::string text;
  for (const auto& s : f.us) {
    tuple.push_back(RationalBase::parse(s));
    text += (text.empty() ? "" : ";") + tuple.back().to_string();
  }
  const auto r = is_admissible(tuple);
  Table t;
  t.columns = {"tuple", "admissible", "witness", "witness_sign"};
  t.add({text, static_cast<u64>(r.admissible ? 1 : 0), join_ints(r.witness), static_cast<i64>(r.witness_sign)});
  return t;
}

Table indicator_report(const Flags& f) {
  const PrimeContext ctx(f.p);
  const OrderSpec spec = f.specs.empty() ? OrderSpec::make(RationalBase::parse(f.u), f.d) : OrderSpec::parse(f.specs[0]);
  const u64 residue = reduce_mod(spec.base, ctx.p());
  const auto free = psi_free_d(spec, ctx);
  Cell divisor, divisor_residual;
  if (spec.index == 1 && ctx.p() < kDlogLimit) {
    const auto v = psi_divisor(residue, ctx);
    divisor = static_cast<i64>(v.rounded);
    divisor_residual = v.residual;
  }
  Table t;
  t.columns = {"p", "spec", "residue", "direct", "psi_free_d", "free_residual", "psi_divisor", "divisor_residual"};
  t.add({f.p, spec.to_string(), residue, static_cast<i64>(indicator_direct(spec, ctx)), static_cast<i64>(free.rounded),
         free.residual, divisor, divisor_residual});
  return t;
}

Table expsum_report(const Flags& f, const std::set<std::string>& given) {
  ExpSumRow row;
  row.kind = f.kind;
  const auto has = [&](const char* name) { return given.count(name) > 0; };
  const auto need = [&](const char* name) {
    if (!has(name)) throw DomainError(std::string("expsum ") + f.kind + " requires " + name);
  };
  if (f.kind == "periodic" || f.kind == "coprime-periodic") {
    need("--m");
    need("--w");
    const auto elem = PeriodicElement::make(f.m, f.w, f.P);
    row.m = f.m;
    row.w = f.w;
    row.cutoff = elem.cutoff;
    row.a = f.a;
    row.result = f.kind == "periodic" ? periodic_sum(elem, f.a) : coprime_periodic_sum(elem, f.a);
  } else {
    need("--p");
    const PrimeContext ctx(f.p);
    row.p = f.p;
    row.q = ctx.q();
    if (f.kind == "kernel") {
      need("--t");
      row.t = f.t;
      row.result = kernel_sum(ctx, f.t);
    } else if (f.kind == "coprime-kernel") {
      need("--t");
      row.t = f.t;
      row.d = f.d;
      row.result = coprime_kernel_sum(ctx, f.t, f.d);
    } else if (f.kind == "gauss") {
      row.result = gauss_resolvent(ctx);
    } else if (f.kind == "weil") {
      row.d = f.d;
      row.a = f.a;
      row.result = weil_power_sum(ctx, f.d, f.a);
    } else if (f.kind == "resolvent") {
      row.d = f.d;
      row.result = power_resolvent(ctx, f.d);
    } else if (f.kind == "incomplete") {
      need("--x");
      row.d = f.d;
      row.a = f.a;
      row.x = f.x;
      row.result = incomplete_sum(ctx, f.d, f.a, f.x);
    } else if (f.kind == "rho") {
      row.d = f.d;
      row.a = f.a;
      row.result = rho(ctx, f.d, f.a);
    } else if (f.kind == "rho-diff") {
      row.d = f.d;
      row.a = f.a;
      row.result = rho_diff(ctx, f.d, f.a);
    } else {
      const OrderSpec spec =
          f.specs.empty() ? OrderSpec::make(RationalBase::parse(f.u), f.d) : OrderSpec::parse(f.specs[0]);
      row.d = spec.index;
      row.u = reduce_mod(spec.base, ctx.p());
      row.result = double_sum(spec, ctx);
    }
  }
  return expsum_table(std::span<const ExpSumRow>(&row, 1));
}

Table census_report(const Flags& f, unsigned workers) {
  CensusQuery query;
  query.x = f.x;
  query.specs = parse_specs(f.specs);
  query.growth_exponent = f.B;
  query.allow_large = f.allow_large;
  const auto report = count_simultaneous(query, workers);
  return census_table(std::span<const CensusReport>(&report, 1));
}

Table main_term_report(const Flags& f, unsigned workers) {
  Table t;
  t.columns = {"x", "two_x", "d", "e", "lcm", "de", "M"};
  t.add({f.x, 2 * f.x, f.d, f.e, std::lcm(f.d, f.e), f.d * f.e, main_term(f.x, f.d, f.e, workers)});
  return t;
}

Table audit_report(const Flags& f, unsigned workers) {
  CensusQuery query;
  query.x = f.x;
  query.specs = parse_specs(f.specs);
  const auto a = decomposition_audit(query, workers);
  Table t;
  t.columns = {"x",  "specs", "primes", "R", "main", "e1", "e2", "e3", "identity", "hit_mismatches", "u_vanishing",
               "e1_nonzero", "v_vanishing", "e2_nonzero", "e3_abs", "e3_reference", "e3_ratio"};
  t.add({a.query.x, a.query.specs_text(), a.primes_audited, a.matching, a.main_exact, a.e1_exact, a.e2_exact,
         a.e3_exact, static_cast<u64>(a.identity_exact ? 1 : 0), a.hit_mismatches, a.u_vanishing_primes, a.e1_nonzero,
         a.v_vanishing_primes, a.e2_nonzero, a.e3_abs, a.e3_reference, a.e3_ratio});
  return t;
}

Table stats_report(const Flags& f, unsigned workers) {
  const auto r = f.trials == 0 ? equal_order_probability_exact(f.p)
                               : equal_order_probability_sampled(f.p, f.trials, f.seed, workers);
  return probability_table(std::span<const ProbabilityReport>(&r, 1));
}

Table avg_order_report(const Flags& f) {
  const auto r = avg_order(f.x, RationalBase::parse(f.u));
  Table t;
  t.columns = {"x", "u", "order_sum", "T"};
  t.add({r.x, r.u, r.order_sum, r.value});
  return t;
}

Table primes_report(const Flags& f, unsigned workers) {
  PrimeRange range{f.lo, f.hi, f.q, f.q == 1 ? 0 : f.a};
  Table t;
  t.columns = {"p"};
  for (u64 p : primes_in_range(range, workers)) t.add({p});
  return t;
}

Table totient_report(const Flags& f, unsigned workers) {
  const auto r = totient_product_avg(f.x, f.q, f.q == 1 ? 0 : f.a, f.indices, workers);
  std::string indices;
  for (u64 d : r.indices) indices += (indices.empty() ? "" : ";") + std::to_string(d);
  Table t;
  t.columns = {"x", "q", "a", "indices", "primes", "non_dividing", "S", "A_hat"};
  t.add({r.x, r.modulus, r.residue, indices, r.primes, r.non_dividing, r.sum, r.constant_estimate});
  return t;
}

int verify_report(const Flags& f, unsigned workers, std::ostream& out) {
  const auto level = parse_level(f.level);
  if (!level) throw DomainError("--level must be quick or full");
  const auto summary = verify_suite(*level, workers);
  if (format_of(f) == OutputFormat::json) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& c : summary.criteria) {
      array.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    out << array.dump(2) << '\n';
  } else {
    out << summary.render();
  }
  return summary.all_passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordlab: multiplicative orders, exponential sums and prime censuses"};
  app.require_subcommand(1, 1);
  Flags f;

  auto* order = app.add_subcommand("order", "order and index of u modulo p");
  order->add_option("--p", f.p, "odd prime")->required();
  order->add_option("--u", f.u, "base n or n/m")->required();

  auto* root = app.add_subcommand("primitive-root", "smallest primitive root of p");
  root->add_option("--p", f.p, "odd prime below 2^40")->required();

  auto* admissible = app.add_subcommand("admissible", "multiplicative independence of a tuple");
  admissible->add_option("--u", f.us, "base n or n/m, repeat for each element")->required();

  auto* indicator = app.add_subcommand("indicator", "order indicators at one prime");
  indicator->add_option("--p", f.p, "odd prime")->required();
  indicator->add_option("--u", f.u, "base n or n/m");
  indicator->add_option("--d", f.d, "index dividing p-1");
  indicator->add_option("--spec", f.specs, "u:d")->expected(1);

  auto* expsum = app.add_subcommand("expsum", "evaluate one exponential sum against its bound");
  expsum->add_option("kind", f.kind, "sum kind")->required()->check(CLI::IsMember(kExpSumKinds));
  expsum->add_option("--p", f.p, "odd prime");
  expsum->add_option("--t", f.t, "kernel frequency in [1, q-1]");
  expsum->add_option("--d", f.d, "index or degree");
  expsum->add_option("--a", f.a, "additive frequency");
  expsum->add_option("--x", f.x, "incomplete sum length");
  expsum->add_option("--m", f.m, "modulus of a periodic sum");
  expsum->add_option("--w", f.w, "unit of the periodic sum");
  expsum->add_option("--P", f.P, "periodic cutoff (default: the full period)");
  expsum->add_option("--u", f.u, "base of the double sum");
  expsum->add_option("--spec", f.specs, "u:d for the double sum")->expected(1);

  auto* census = app.add_subcommand("census", "primes in [x, 2x] with prescribed orders");
  census->add_option("--x", f.x, "lower end of the sweep")->required();
  census->add_option("--spec", f.specs, "u:d, repeat to build the tuple")->required();
  census->add_option("--B", f.B, "growth exponent used in the lower-bound ratio");
  census->add_flag("--allow-large", f.allow_large, "permit sweeps beyond 2x = 2*10^7");

  auto* mainterm = app.add_subcommand("mainterm", "main term of the two-base census");
  mainterm->add_option("--x", f.x, "lower end of the sweep")->required();
  mainterm->add_option("--d", f.d, "first index");
  mainterm->add_option("--e", f.e, "second index");

  auto* audit = app.add_subcommand("audit", "exact decomposition audit for two specs");
  audit->add_option("--x", f.x, "lower end of the sweep")->required();
  audit->add_option("--spec", f.specs, "u:d, exactly twice")->required()->expected(2);

  auto* stats = app.add_subcommand("stats", "equal-order pair probability");
  stats->add_option("--p", f.p, "odd prime")->required();
  stats->add_option("--trials", f.trials, "sampled pairs (0: exact value only)");
  stats->add_option("--seed", f.seed, "sampler seed");

  auto* avg = app.add_subcommand("avg-order", "average multiplicative order T_u(x)");
  avg->add_option("--x", f.x, "upper end, 2..10^6")->required();
  avg->add_option("--u", f.u, "integer base")->required();

  auto* primes = app.add_subcommand("primes", "primes in [lo, hi], optionally p = a mod q");
  primes->add_option("--lo", f.lo, "lower end")->required();
  primes->add_option("--hi", f.hi, "upper end")->required();
  primes->add_option("--q", f.q, "modulus");
  primes->add_option("--a", f.a, "residue");

  auto* totient = app.add_subcommand("totient-avg", "totient-product average over p = a mod q in [x, 2x]");
  totient->add_option("--x", f.x, "lower end of the sweep")->required();
  totient->add_option("--q", f.q, "modulus");
  totient->add_option("--a", f.a, "residue coprime to q");
  totient->add_option("--d", f.indices, "index, repeat for each factor")->required();

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--level", f.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", f.seed, "accepted for symmetry; the suite uses its own fixed seed");

  for (auto* cmd : app.get_subcommands({})) add_common(cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const unsigned workers = f.workers > 0 ? f.workers : workers_from_env(1);
  std::ofstream file;
  if (!f.output.empty()) {
    file.open(f.output);
    if (!file) {
      err << "usage error: cannot open --output " << f.output << '\n';
      return kExitUsage;
    }
  }
  std::ostream& sink = f.output.empty() ? out : file;
  const auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  try {
    if (name == "verify") return verify_report(f, workers, sink);
    Table table;
    if (name == "order") {
      table = order_report(f);
    } else if (name == "primitive-root") {
      table = primitive_root_report(f);
    } else if (name == "admissible") {
      table = admissible_report(f);
    } else if (name == "indicator") {
      table = indicator_report(f);
    } else if (name == "expsum") {
      std::set<std::string> given;
      for (const auto* opt : cmd->get_options()) {
        if (opt->count() > 0) given.insert(opt->get_name());
      }
      table = expsum_report(f, given);
    } else if (name == "census") {
      table = census_report(f, workers);
    } else if (name == "mainterm") {
      table = main_term_report(f, workers);
    } else if (name == "audit") {
      table = audit_report(f, workers);
    } else if (name == "stats") {
      table = stats_report(f, workers);
    } else if (name == "avg-order") {
      table = avg_order_report(f);
    } else if (name == "primes") {
      table = primes_report(f, workers);
    } else {
      table = totient_report(f, workers);
    }
    write_table(sink, table, format_of(f));
  } catch (const IdentityViolation& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace ordlab
