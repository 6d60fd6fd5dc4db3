// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <cstdio>

#include "ghmc/experiments/acceptance.hpp"

int main() {
  using namespace ghmc::experiments;
  int failed = 0;
  for (const auto& c : acceptance_criteria()) {
    const CriterionOutcome outcome = run_criterion(c);
    std::printf("%s\n", outcome.summary().c_str());
    std::fflush(stdout);
    failed += outcome.passed() ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, acceptance_criteria().size());
  return failed == 0 ? 0 : 1;
}
