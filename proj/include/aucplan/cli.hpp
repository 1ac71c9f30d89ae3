#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aucplan::app {

/// Runs the command line. Subcommands: size-single, size-diff, assurance,
/// simulate, convert-rho, reproduce-table, serve.
/// Exit status: 0 success, 1 I/O failure, 2 invalid usage or input.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aucplan::app
