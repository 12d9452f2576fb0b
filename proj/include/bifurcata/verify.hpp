#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bifurcata/config.hpp"

namespace bifurcata {

// One named runtime check: either a module property exercised on the
// configured problem, or one of the twelve numbered acceptance checks.
// `detail` states the measured quantity against its bound on success, or
// what went wrong on failure.
struct CheckResult {
  std::string id;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;            // reduced sample counts (self-test sizing)
  bool acceptance_only = false;  // skip the per-module property suites
  std::ostream* log = nullptr;   // one line per finished check when set
};

// Runs the per-module property suites on the configured problem, then the
// twelve acceptance checks.  The acceptance checks pin their own problems
// (cubic with a = 1, then the sine re-run) so they always measure the same
// thing regardless of configuration; the property suites and the shape
// condition report follow the configured nonlinearity and coupling.
std::vector<CheckResult> run_verification(const Config& cfg,
                                          const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

// {"passed": ..., "checks": [{"id", "passed", "seconds", "detail"}, ...]}
void write_verify_json(const std::vector<CheckResult>& results,
                       const std::string& path);

}  // namespace bifurcata
