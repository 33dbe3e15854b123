#pragma once

#include <string>
#include <vector>

namespace tsdlink {

inline constexpr unsigned acceptance_criterion_count = 8;

struct CriterionResult {
  unsigned number = 0;
  std::string title;
  bool passed = false;
  /// One line per sub-check, then any failure detail.
  std::string detail;
  double elapsed_ms = 0;
};

/// Runs one acceptance criterion (1..8) on the built-in algebras.
CriterionResult run_criterion(unsigned number);

/// "criterion 3 [PASS] braiding suite (41.2 s)".
std::string summary_line(const CriterionResult& result);

/// Frozen invariant values: algebra, word, strands, framings, value.
struct RegressionFixture {
  const char* algebra;
  const char* word;
  unsigned strands;
  std::vector<long> framings;
  const char* value;
};
const std::vector<RegressionFixture>& regression_fixtures();

/// Single-coefficient (+1) mutants of a structure: one per stored tuple and
/// output index. Returns the names of the mutants the validator accepts.
std::vector<std::string> accepted_mutants(const std::string& algebra);

}  // namespace tsdlink
