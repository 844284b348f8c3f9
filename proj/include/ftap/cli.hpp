#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ftap::cli {

enum ExitCode : int {
    kHolds = 0,         ///< property holds / artifact produced
    kFails = 1,         ///< property fails in the expected way
    kInputError = 2,
    kAlarm = 3,         ///< routes disagree; must never happen
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftap::cli
