#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cvw/run_config.hpp"

namespace cvw {

/// Process exit codes. Detection outcomes never change the exit code.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and other operational failures
  kExitConfig = 2,   // bad flags, config files or sample files
  kExitNumeric = 3,  // a numeric routine could not produce a trustworthy result
};

/// Every command writes its resolved configuration next to its results as
/// <output_dir>/<name>.config.ini so the run can be repeated from that file.
struct CommandOutput {
  std::vector<std::string> files;
};

CommandOutput cmd_eval(const RunConfig& config, std::ostream& out);
CommandOutput cmd_scan(const RunConfig& config, std::ostream& out);
CommandOutput cmd_ingest(const RunConfig& config, std::ostream& out);
/// Draws synthetic (q1, q2) records from the state's joints at θ and θ + π/2
/// into <name>-r.csv and <name>-s.csv.
CommandOutput cmd_sample(const RunConfig& config, std::ostream& out);

/// Validates, applies the worker cap, dispatches on config.command and maps
/// exceptions to exit codes, printing messages to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cvw
