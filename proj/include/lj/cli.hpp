#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lj {

// ljw: `args` excludes the program name. Returns the exit status: 0 pass, 1 a fail,
// inconclusive or rejected verdict, 2 usage, parse or type errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Exit status for a report status string.
int exit_code(const std::string& status);

}  // namespace lj
