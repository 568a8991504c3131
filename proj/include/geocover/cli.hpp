#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geocover {

/// Exit codes: 0 success, 1 verification failed, 2 usage, I/O or
/// construction error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geocover
