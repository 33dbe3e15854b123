#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsdlink/scalar.hpp"

namespace tsdlink {

/// One failed identity instance.
struct Failure {
  std::string identity;
  /// Basis indices of the witness (1-based algebra indices, or 0..d tensor digits).
  std::vector<unsigned> witness;
  /// Residual vector for algebra identities; empty for operator identities.
  std::vector<Scalar> residual;
  /// Human-readable residual.
  std::string detail;
};

/// Per-identity summary line: "Jacobi: PASS (27 triples)".
struct CheckSummary {
  std::string identity;
  bool passed = true;
  std::size_t instances = 0;
  std::string unit;
  std::string note;
  /// Informational probes are reported but never make a report fail.
  bool asserted = true;
};

class ValidationReport {
 public:
  /// No failures recorded and every asserted check passed.
  bool passed() const noexcept;

  const std::vector<Failure>& failures() const noexcept { return failures_; }
  const std::vector<CheckSummary>& checks() const noexcept { return checks_; }

  void add_failure(Failure failure) { failures_.push_back(std::move(failure)); }
  void add_check(CheckSummary summary) { checks_.push_back(std::move(summary)); }
  /// Appends another report's checks and failures.
  void merge(const ValidationReport& other);

  /// One line per check, followed by the first few failures.
  std::string to_text(std::size_t max_failures = 5) const;

 private:
  std::vector<Failure> failures_;
  std::vector<CheckSummary> checks_;
};

}  // namespace tsdlink
