#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amaze::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kValidation = 3,
    kIo = 4,
};

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace amaze::cli
