// Acceptance gate: runs the twelve numbered checks at full size on their
// pinned problems and prints one PASS/FAIL line per check.  Exit status 0
// iff every check passed.

#include <cstdio>
#include <iostream>
#include <string>

#include "bifurcata/verify.hpp"

int main(int argc, char** argv) {
  bifurcata::Config cfg;  // the numbered checks pin their own problems
  bifurcata::VerifyOptions opts;
  opts.acceptance_only = true;
  opts.log = &std::cout;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") opts.quick = true;

  const auto results = bifurcata::run_verification(cfg, opts);
  int failed = 0;
  for (const auto& r : results)
    if (!r.passed) ++failed;
  if (failed == 0) {
    std::printf("all %zu acceptance checks passed\n", results.size());
    return 0;
  }
  std::printf("%d of %zu acceptance checks failed\n", failed, results.size());
  return 1;
}
