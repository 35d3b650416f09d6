#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace possdom::cli {

enum ExitCode : int { kAccept = 0, kReject = 1, kInputError = 2, kCapExceeded = 3, kInternalError = 4 };

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace possdom::cli
