#pragma once

#include <string>

#include "tcljc/config.hpp"

namespace tcljc {

/// "%.17g" rendering: round-trips doubles exactly; the determinism contract
/// for every CSV column.
std::string csv_double(double v);

/// Comment header shared by every output file: version, resolved config,
/// resolved cutoff. No timestamps, so identical runs are byte-identical.
std::string csv_header(const RunConfig& cfg);

void write_trajectory_csv(const std::string& path, const RunConfig& cfg,
                          const Trajectory& tr);

void write_comparison_csv(const std::string& path, const RunConfig& cfg,
                          const ErrorSeries& es);

void write_scaling_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<ScalingRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tcljc
