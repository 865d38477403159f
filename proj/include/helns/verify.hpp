#pragma once

#include <iosfwd>

namespace helns {

// Runs the operator/identity invariant suite and prints one line per check.
// Returns the number of failed checks.
int run_verify(std::ostream& out);

}  // namespace helns
