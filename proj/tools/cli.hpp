#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amicable::cli {

/// Process exit statuses. Frozen; see docs/exit-codes.md.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,          // unexpected internal error
  kUsage = 2,            // bad arguments, unreadable catalog/config/cache
  kCounterexample = 3,   // a rule or scan row met its conditions and failed
  kUnresolved = 4,       // rows remain undecided at this budget
  kDisagreement = 5,     // a decided row contradicts the published table
};

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

/// The process environment.
EnvLookup process_environment();

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_environment());

}  // namespace amicable::cli
