#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace growth {

// Command dispatch for the `growth` tool. Exit codes: 0 success/feasible,
// 1 semantic failure (invalid system, infeasible certificate), 2 parse or
// usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace growth
