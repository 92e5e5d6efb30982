#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pgraph::cli {

/// Runs the command line `args` (without the program name). Returns 0 when
/// the property named by the subcommand holds, 1 when it fails and 2 for
/// usage or input errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgraph::cli
