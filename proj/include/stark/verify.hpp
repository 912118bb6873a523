#pragma once

#include <string>
#include <vector>

namespace stark {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

// The ten acceptance criteria.  work_dir is used for the determinism
// round trips; it is created if missing.  Each criterion reports a one-line
// detail with the measured quantities behind its verdict.
std::vector<CriterionResult> run_acceptance_criteria(const std::string& work_dir);

}  // namespace stark
