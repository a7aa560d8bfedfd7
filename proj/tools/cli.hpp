#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itr::cli {

enum ExitCode : int {
    kOk = 0,
    kNo = 1,         // NO verdict or failed verification
    kMalformed = 2,  // unreadable input or bad arguments
    kCapExceeded = 3,
};

// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itr::cli
