#pragma once

#include <iosfwd>

namespace cxn::cli {

/// Exit statuses shared by every subcommand.
enum Status : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs the command line `argv` writing results to `out` and diagnostics to
/// `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cxn::cli
