#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdga::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { affirmative = 0, negative = 1, usage = 2, aborted = 3 };

/// Runs one `pdga` invocation; `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdga::cli
