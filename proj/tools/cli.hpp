#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbx::cli {

/// Exit codes: 0 success, 1 domain/integrity/format/io failure, 2 usage error.
/// Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbx::cli
