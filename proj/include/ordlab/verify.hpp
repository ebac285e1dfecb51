#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ordlab {

enum class VerifyLevel { quick, full };

std::optional<VerifyLevel> parse_level(std::string_view text);
const char* level_name(VerifyLevel level);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // key=value pairs, worst observed ratios
};

struct VerifySummary {
  VerifyLevel level = VerifyLevel::quick;
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
  std::size_t passed_count() const;
  // One line per criterion plus a summary line; contains nothing that
  // depends on timing or on the worker count.
  std::string render() const;
};

// quick caps the prime ranges near 500 and the census ladder at 10^4; full
// runs the complete acceptance ranges. The last criterion reruns the others
// with 1 and 4 workers and compares the rendered text.
VerifySummary verify_suite(VerifyLevel level, unsigned workers = 1);

}  // namespace ordlab
