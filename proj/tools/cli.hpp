#pragma once

#include <iosfwd>

namespace vpl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIllPosed = 3,
  kDivergence = 4,
  kVerificationFailed = 5,
};

/// Entry point for the `vpl` binary: build-graph, solve, bench, verify-pde.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vpl::cli
