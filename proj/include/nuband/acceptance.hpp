#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nuband {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the ten acceptance criteria, printing one pass/fail line per criterion
// to os. All tolerances are pinned in the implementation.
std::vector<CriterionResult> run_acceptance(std::ostream& os, int threads = 0);

bool acceptance_passed(const std::vector<CriterionResult>& results);

}  // namespace nuband
