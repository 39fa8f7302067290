#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conditionh {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
};

/// Runs AC1..AC7 in order, printing "<id> PASS|FAIL <title>: <detail> (<t> s)" per
/// criterion. A criterion that exceeds its time budget fails.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

}  // namespace conditionh
