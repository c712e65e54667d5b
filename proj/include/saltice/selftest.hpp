#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace saltice {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reference values computed independently at high precision, rechecked against
/// the library. Fast enough to run on every build.
std::vector<CheckResult> run_selftest();

/// One "PASS name (detail)" or "FAIL name (detail)" line per check; returns true
/// when all passed.
bool report(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace saltice
