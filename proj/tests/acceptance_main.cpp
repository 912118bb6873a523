// Acceptance gate: runs every criterion, prints one line per result, exits
// nonzero if any fails.  Optional argv[1] overrides the scratch directory
// used by the determinism checks.
#include <cstdio>
#include <exception>
#include <string>

#include "stark/verify.hpp"

int main(int argc, char** argv) {
  const std::string work_dir = argc > 1 ? argv[1] : "acceptance_tmp";
  std::vector<stark::CriterionResult> results;
  try {
    results = stark::run_acceptance_criteria(work_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 2;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
