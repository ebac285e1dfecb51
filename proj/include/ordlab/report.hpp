#pragma once

#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ordlab/census.hpp"
#include "ordlab/expsum.hpp"
#include "ordlab/stats.hpp"

namespace ordlab {

// An empty cell prints as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::string, i64, u64, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws DomainError when the row width differs from the header.
  void add(std::vector<Cell> row);
};

// 12 significant digits, the single formatting rule for every real.
std::string format_real(double v);
std::string cell_text(const Cell& cell);

enum class OutputFormat { csv, json };

void write_csv(std::ostream& out, const Table& table);
// Array of objects; reals are rounded through format_real first so both
// encodings carry the same values.
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

Table census_table(std::span<const CensusReport> reports);
Table probability_table(std::span<const ProbabilityReport> reports);

// Parameters of one evaluated exponential sum; unset fields print empty.
struct ExpSumRow {
  std::string kind;
  std::optional<u64> p, q, m, w, cutoff, d, a, t, x, u;
  ExpSumResult result;
};
Table expsum_table(std::span<const ExpSumRow> rows);

}  // namespace ordlab
