#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ouheat::cli {

/// Execute one CLI invocation. Machine-readable results (a single JSON
/// document or a CSV stream) go to `out`; diagnostics go to `err`.
/// Returns the process exit code: 0 success, 1 domain error, 2 usage error,
/// 3 verification-suite failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ouheat::cli
