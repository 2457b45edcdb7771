#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gsol/config.hpp"
#include "gsol/errors.hpp"

namespace gsol {

enum class Command { validate, classify, build, balance, verify, kasner, holonomy, wick, sample };

/// Parses a command name; std::nullopt when unknown.
std::optional<Command> parse_command(std::string_view name);
std::string command_name(Command c);

struct PipelineOptions {
  std::size_t wick_family = 1;  ///< 1-based, for `wick`
  int threads = 1;              ///< grid sweeps; output does not depend on it
};

struct PipelineResult {
  std::string report;
  std::string csv;  ///< filled by `sample`
  ExitCode exit = ExitCode::success;
};

/// Runs one command. Module errors propagate as exceptions; the caller maps
/// them to exit codes with exit_code_for().
PipelineResult run_pipeline(const RunConfig& config, Command command, const PipelineOptions& options = {});

/// Exit code for a library exception (input 2, accuracy 3, unbalanceable 1).
ExitCode exit_code_for(const std::exception& e);

}  // namespace gsol
