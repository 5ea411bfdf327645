// Acceptance suite runner: one pass/fail line per criterion, exit code 0 only
// when every criterion holds (4 otherwise, matching the CLI's selftest).

#include <cstdio>
#include <iostream>

#include "nuband/acceptance.hpp"

int main() {
  const auto results = nuband::run_acceptance(std::cout, 0);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::printf("%d/%zu criteria passed\n", passed, results.size());
  return nuband::acceptance_passed(results) ? 0 : 4;
}
