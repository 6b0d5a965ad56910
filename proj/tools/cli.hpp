#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anrot::tool {

// Exit codes: 0 success, 2 config/validation error, 3 precondition unmet,
// 4 numerical-drift abort, 1 anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anrot::tool
