#pragma once

#include <string>

#include <json.hpp>

#include "cli/config.hpp"

namespace greyvar::cli {

/// Output of one command: the deterministic results section plus the
/// rendered payload in the requested format.
struct CommandOutput {
  nlohmann::json results;
  std::string csv;     // format == csv
  std::string binary;  // format == bin
};

CommandOutput run_command(const ExperimentConfig& config, unsigned threads);

/// Full run report: config echo, results, library version, wall time.
nlohmann::json make_report(const ExperimentConfig& config, const CommandOutput& output,
                           double wall_seconds);

/// Process exit code for an error kind: 2 usage, 3 numerical, 4 I/O.
int exit_code_for(const std::exception& e);

}  // namespace greyvar::cli
