#pragma once

#include <string>
#include <vector>

namespace f2dyn {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

constexpr int kAcceptanceCriteria = 9;

/// Runs one acceptance check (1-based). A check that throws or exceeds its
/// time limit fails; the exception text goes into detail.
CriterionResult run_criterion(int id, int jobs = 1);
std::vector<CriterionResult> run_acceptance(int jobs = 1);

/// "PASS [3] title (0.12 s, limit 5 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace f2dyn
