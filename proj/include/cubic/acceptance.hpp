// SPDX-License-Identifier: Apache-2.0
//
// The acceptance suite: thirteen criteria, each printed as one PASS or FAIL
// line. Shared by the acceptance test binary and `cubic selftest`.
#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace cubic {

struct AcceptanceOptions {
  /// Reduced parameters that finish in under a minute; verdicts use the same tolerances.
  bool quick = false;
  int threads = 1;
  std::uint64_t seed = 20240601;
  /// The cubic CLI executable, used by the determinism criterion.
  std::string cli_path;
  /// Restrict to these criterion numbers (empty = all).
  std::set<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criteria that fail at the scale this suite runs, with the reason recorded
/// in the project notes. They still print FAIL.
const std::set<int>& known_failures();

/// Runs the suite, printing one line per criterion to `out` as it completes
/// and timings to `log`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out, std::ostream& log);

}  // namespace cubic
