#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "ordlab/arith.hpp"
#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

using Row = std::vector<i64>;

i64 row_content(const Row& row) {
  i64 g = 0;
  for (i64 v : row) g = std::gcd(g, v);
  return g;
}

void make_primitive(Row& row) {
  const i64 g = row_content(row);
  if (g > 1) {
    for (auto& v : row) v /= g;
  }
}

// Integer Gauss-Jordan elimination: every pivot column ends up zero outside
// its pivot row. Rows are kept primitive so entries stay small.
std::vector<std::size_t> echelonize(std::vector<Row>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = top; r < rows.size(); ++r) {
      if (rows[r][c] != 0 && (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) {
        best = r;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[top], rows[best]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == top || rows[r][c] == 0) continue;
      const i64 g = std::gcd(rows[top][c], rows[r][c]);
      const i64 keep = rows[top][c] / g;
      const i64 take = rows[r][c] / g;
      for (std::size_t j = 0; j < cols; ++j) {
        const __int128 v = static_cast<__int128>(rows[r][j]) * keep - static_cast<__int128>(rows[top][j]) * take;
        rows[r][j] = static_cast<i64>(v);
      }
      make_primitive(rows[r]);
    }
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

}  // namespace

Admissibility is_admissible(std::span<const RationalBase> tuple) {
  const std::size_t k = tuple.size();
  if (k < 1 || k > 16) throw DomainError("is_admissible: tuple length must be in [1, 16]");

  // prime -> exponent per base (numerator positive, denominator negative)
  std::map<u64, Row> exponents;
  for (std::size_t i = 0; i < k; ++i) {
    const u64 num = static_cast<u64>(std::llabs(tuple[i].numerator()));
    if (num > 1) {
      const auto fn = factorize(num);
      for (const auto& f : fn.factors()) {
        auto& row = exponents.try_emplace(f.prime, Row(k, 0)).first->second;
        row[i] += f.exponent;
      }
    }
    if (tuple[i].denominator() > 1) {
      const auto fd = factorize(tuple[i].denominator());
      for (const auto& f : fd.factors()) {
        auto& row = exponents.try_emplace(f.prime, Row(k, 0)).first->second;
        row[i] -= f.exponent;
      }
    }
  }

  std::vector<Row> rows;
  rows.reserve(exponents.size());
  for (auto& [prime, row] : exponents) rows.push_back(std::move(row));
  const auto pivots = echelonize(rows, k);

  Admissibility result;
  if (pivots.size() == k) return result;

  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;

  // x_free = scale, other free columns 0, pivot columns solved exactly.
  i64 scale = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r][free_col] != 0) scale = std::lcm(scale, std::llabs(rows[r][pivots[r]]));
  }
  Row witness(k, 0);
  witness[free_col] = scale;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    witness[pivots[r]] = -rows[r][free_col] * scale / rows[r][pivots[r]];
  }
  make_primitive(witness);
  const auto first = std::find_if(witness.begin(), witness.end(), [](i64 v) { return v != 0; });
  if (*first < 0) {
    for (auto& v : witness) v = -v;
  }

  i64 negative_weight = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (tuple[i].numerator() < 0) negative_weight += witness[i];
  }
  result.admissible = false;
  result.witness = std::move(witness);
  result.witness_sign = (negative_weight % 2 == 0) ? 1 : -1;
  return result;
}

}  // namespace ordlab
