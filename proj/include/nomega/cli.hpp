#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nomega {

/// Runs one CLI invocation. `args` excludes the program name. Verdicts go to
/// `out`, diagnostics to `err`. Returns 0 on any completed decision, 1 on
/// usage errors, 2 on parse or validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nomega
