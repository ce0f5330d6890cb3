#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dynprice/config.hpp"

namespace dynprice {

/// Result of one CLI command: text for the terminal, named CSV files, and the
/// process exit code.
struct CommandOutput {
  std::string report;
  std::vector<std::pair<std::string, std::string>> files;  // (file name, contents)
  int exit_code = 0;
};

CommandOutput cmd_solve(const ExperimentConfig& config);
/// Monte Carlo cell at the first market size: per-replication traces and the
/// regret row, one pair of files per policy.
CommandOutput cmd_run(const ExperimentConfig& config);
CommandOutput cmd_sweep(const ExperimentConfig& config);
CommandOutput cmd_lowerbound(const ExperimentConfig& config);
CommandOutput cmd_check(const ExperimentConfig& config);

/// Validates the config and dispatches on config.command.
CommandOutput run_command(const ExperimentConfig& config);

/// Writes every file of `output` under `directory`, creating it if needed.
void write_outputs(const CommandOutput& output, const std::string& directory);

}  // namespace dynprice
