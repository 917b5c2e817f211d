#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracsch_tools/config.hpp"

namespace fracsch::tools {

/// Runs a validated configuration; writes CSVs under cfg.output and a summary to out.
/// Returns exit_ok or exit_check_failed; library errors propagate.
int run_command(const RunConfig& cfg, std::ostream& out);

/// Full front end: parse, echo effective_config, run, and map errors to exit codes.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracsch::tools
