#pragma once

#include <iosfwd>

namespace orsched::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kUsage = 2,
    kIoOrFormat = 3,
    kBudgetOrRejection = 4,
};

/// Entry point of the `orsched` tool. Subcommands: solve, validate, oracle,
/// gen, stats, bench. Never throws; failures map to ExitCode values.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orsched::cli
