#pragma once

#include "config.hpp"

#include <riesz/measure.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace riesz::app {

enum ExitCode : int
{
  kExitOk = 0,
  kExitInvariantFailure = 1,
  kExitConfigError = 2,
};

/// The measure a run works on: the configured file when set, otherwise the
/// profile generated from (profile, rmax, seed).
[[nodiscard]] PointMeasure resolve_measure(const RunConfig& cfg);

// Each command writes into `out_dir` (created if needed) and logs one-line
// progress notes to `log`. They throw on configuration or domain errors;
// run_command maps those to exit codes.
int cmd_generate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_decompose(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_residuals(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_cover(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Dispatches by name and converts exceptions into exit codes:
/// configuration, contract and domain errors give kExitConfigError.
int run_command(const std::string& name, const RunConfig& cfg, const std::filesystem::path& out_dir,
                std::ostream& log);

} // namespace riesz::app
