#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace polybarrier::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalFailure = 2, kCertificateViolation = 3 };

struct GlobalOptions {
  std::string config_path;
  std::vector<std::string> overrides;  // section.key=value
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | csv+svg
  bool break_constant = false;
};

const std::vector<std::string>& command_names();

/// Loads the configuration, runs one subcommand and maps failures to exit
/// codes. Diagnostics go to `err`, summaries to `out`.
int run_command(const std::string& name, const GlobalOptions& opts, std::ostream& out,
                std::ostream& err);

/// Runs with an already-built configuration; throws on failure.
int execute(const std::string& name, const Config& cfg, const GlobalOptions& opts, std::ostream& out);

}  // namespace polybarrier::cli
