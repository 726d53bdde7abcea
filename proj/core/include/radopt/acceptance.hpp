#pragma once

#include <string>
#include <vector>

namespace radopt {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct AcceptanceOptions {
  /// Empty = run everything; otherwise only the listed criterion ids.
  std::vector<int> only;
  /// Thread count for the multi-seed RL criterion.
  int parallel = 10;
  /// Scratch directory for criteria that write files.
  std::string work_dir = "/tmp/radopt-accept";
};

/// Runs the acceptance criteria and returns one result per criterion, in id
/// order. Each criterion checks its stated tolerance and its runtime budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// Prints "PASS"/"FAIL" lines and returns true iff everything passed.
bool report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace radopt
