#pragma once

#include <string>

#include "tcljc/config.hpp"

namespace tcljc {

/// Dispatches one CLI subcommand, writing its outputs under cfg.out_dir.
/// Exit codes: 0 success, 1 validation failure, 2 config error, 3 numerical
/// failure. On nonzero exit a one-line diagnosis is appended to `diagnosis`.
int run_subcommand(const RunConfig& cfg, const std::string& name, int jobs,
                   std::string& diagnosis);

}  // namespace tcljc
