#pragma once

// Self-checks behind `ewa verify` and the acceptance test binary. Each
// criterion prints one PASS/FAIL line; informational lines carry extra
// diagnostics and never affect the exit status.

#include <iosfwd>
#include <string>
#include <vector>

namespace ewa {

struct CriterionResult {
  std::string id;  ///< "1".."12", informational lines get a suffix such as "7i"
  std::string name;
  bool passed = false;
  bool informational = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 0;  ///< workers for the sweep criteria, 0 = all cores
  bool informational = true;
};

/// Runs every criterion, printing each line to `out` as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

/// True when no non-informational criterion failed.
[[nodiscard]] bool all_passed(const std::vector<CriterionResult>& results);

std::string format_result(const CriterionResult& r);

}  // namespace ewa
