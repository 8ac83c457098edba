#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace comet {

namespace exit_code {
constexpr int ok = 0;
constexpr int parse_error = 1;  // also usage errors and unreadable files
constexpr int type_error = 2;
constexpr int not_closed = 3;
constexpr int zero_mass = 4;
constexpr int law_failure = 5;
}  // namespace exit_code

/// Runs the command line `args` (without the program name) and returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace comet
