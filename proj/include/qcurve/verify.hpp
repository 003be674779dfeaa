// Acceptance checks 1..11, each with its tolerances fixed here.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcurve {

// One named group of cases sharing a tolerance.  `worst` is the case closest
// to failing (or the first failing one).
struct CheckLine {
  std::string label;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double tolerance = 0.0;
  double worstValue = 0.0;
  double worstSlack = 0.0;  // signed distance to the threshold, negative on failure
  std::string worstCase;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckLine> checks;
  double seconds = 0.0;
  double runtimeLimit = 0.0;
  bool withinRuntime = true;
  bool pass = false;  // every check passes and the runtime limit is met
  std::string error;  // non-empty if the criterion threw
};

struct VerifyOptions {
  int nMax = 0;        // > 0 caps every dimension sweep at n <= nMax
  int jobs = 1;
  std::uint64_t seed = 0;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opts = {});

}  // namespace qcurve
