#pragma once

#include <string>
#include <vector>

#include "tcljc/config.hpp"

namespace tcljc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Named invariant checks spanning every module; deterministic order and
/// byte-identical details for identical configs. `jobs` fans independent
/// checks out over threads; results are merged by index.
std::vector<CheckResult> run_validation_suite(const RunConfig& cfg, int jobs = 1);

/// One "pass,<name>,<detail>" / "fail,..." line per check plus a summary row.
std::string render_validation_report(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace tcljc
