#pragma once

#include <iosfwd>

namespace mrfcut::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,   // internal invariant violated
  kInput = 2,     // bad flags, files or parameters
  kMismatch = 3,  // a verification check disagreed
  kLimit = 4,     // size or enumeration cap exceeded
};

/// Runs the `mrfcut` command line. JSON reports go to `out` unless --report
/// names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mrfcut::cli
