// Runs the full verification suite and prints one line per acceptance
// criterion. Exit status is nonzero when any criterion fails.

#include <iostream>

#include "ordlab/parallel.hpp"
#include "ordlab/verify.hpp"

int main() {
  const auto summary = ordlab::verify_suite(ordlab::VerifyLevel::full, ordlab::workers_from_env(1));
  std::cout << summary.render();
  return summary.all_passed() ? 0 : 1;
}
