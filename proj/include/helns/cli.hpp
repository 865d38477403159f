#pragma once

#include <string>
#include <vector>

namespace helns {

// Subcommands: simulate, decompose, monitor, probe, verify.
// Exit codes: 0 success, 1 invariant failure, 2 configuration error,
// 3 I/O error.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace helns
