#pragma once

#include <string>
#include <vector>

namespace holonomy {

/// Command-line entry point: subcommands `flux`, `table`, `check`,
/// `convergence`. Returns 0 on success, 1 on a failed check or method
/// disagreement, 2 on argument errors.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace holonomy
