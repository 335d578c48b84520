#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anita::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,     // incomplete, invalid, or grading mismatch
  kParseError = 2,
  kUsageError = 3,   // bad arguments, IO failure, unsupported input, bind failure
};

/// Runs the command line; args[0] is the program name. Colour is used only
/// when `tty` is set and ANITA_COLOR is not "never".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        bool tty = false);

}  // namespace anita::cli
