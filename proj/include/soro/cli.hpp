#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soro {

// Dispatches one subcommand invocation (argv without the program name).
// Every subcommand is a thin wrapper over the library; all randomness comes
// from explicit --seed arguments. Exit codes: 0 success, 1 usage, 2 invalid
// input, 3 solver gave up within its budget. Errors go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace soro
