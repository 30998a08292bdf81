#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitcert::cli {

enum Exit { Ok = 0, Failed = 1, Precondition = 2, Violation = 3 };

/// Runs one command (args excludes the program name). The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitcert::cli
