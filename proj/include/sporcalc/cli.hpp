#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sporcalc::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParseError = 2,
  kUnsupported = 3,
  kCapExceeded = 4,
};

/// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sporcalc::cli
