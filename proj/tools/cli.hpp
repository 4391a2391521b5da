#pragma once

#include <ostream>

namespace geostable {

/// Entry point of the `geostable` tool. Returns the process exit code:
/// 0 success, 1 runtime or numerical failure, 2 rejected configuration.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geostable
