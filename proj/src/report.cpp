#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ordlab/errors.hpp"
#include "ordlab/report.hpp"

namespace ordlab {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
Cell opt(const std::optional<T>& v) {
  if (!v) return std::monostate{};
  return Cell(*v);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DomainError("table row has " + std::to_string(row.size()) + " cells, header has " +
                      std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(i64 v) const { return std::to_string(v); }
    std::string operator()(u64 v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  using nlohmann::ordered_json;
  ordered_json array = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& cell = row[i];
      ordered_json value;
      if (const auto* s = std::get_if<std::string>(&cell)) {
        value = *s;
      } else if (const auto* v = std::get_if<i64>(&cell)) {
        value = *v;
      } else if (const auto* v = std::get_if<u64>(&cell)) {
        value = *v;
      } else if (const auto* v = std::get_if<double>(&cell)) {
        if (std::isfinite(*v)) value = std::stod(format_real(*v));
      }
      obj[table.columns[i]] = std::move(value);
    }
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    write_json(out, table);
  } else {
    write_csv(out, table);
  }
}

Table census_table(std::span<const CensusReport> reports) {
  Table t;
  t.columns = {"x", "two_x", "k", "specs", "primes_total", "R", "skipped", "M", "e3_abs", "lower_bound", "ratio"};
  for (const auto& r : reports) {
    t.add({r.query.x, 2 * r.query.x, static_cast<u64>(r.query.specs.size()), r.query.specs_text(),
           r.prime_count_total, r.matching, r.skipped, r.main_term, r.e3_abs, r.analytic_lower_bound, r.ratio});
  }
  return t;
}

Table probability_table(std::span<const ProbabilityReport> reports) {
  Table t;
  t.columns = {"p", "alpha2_num", "alpha2_den", "alpha2", "phi_ratio", "trials", "hits", "estimate", "seed"};
  for (const auto& r : reports) {
    std::vector<Cell> row = {r.p, r.alpha2_num, r.alpha2_den, r.alpha2, r.phi_ratio};
    if (r.sampled) {
      row.insert(row.end(), {r.sampled->trials, r.sampled->hits, r.sampled->estimate, r.sampled->seed});
    } else {
      row.insert(row.end(), 4, std::monostate{});
    }
    t.add(std::move(row));
  }
  return t;
}

Table expsum_table(std::span<const ExpSumRow> rows) {
  Table t;
  t.columns = {"kind", "p", "q", "m", "w", "P", "d", "a", "t", "x", "u",
               "re", "im", "magnitude", "bound", "ratio", "term_count", "hard_bound"};
  for (const auto& r : rows) {
    const auto& s = r.result;
    t.add({r.kind, opt(r.p), opt(r.q), opt(r.m), opt(r.w), opt(r.cutoff), opt(r.d), opt(r.a), opt(r.t), opt(r.x), opt(r.u),
           s.value.real(), s.value.imag(), s.magnitude, s.bound, s.ratio, s.term_count, opt(s.hard_bound)});
  }
  return t;
}

}  // namespace ordlab
