#pragma once

#include <string>
#include <vector>

namespace epic {

// Full command-line surface, in-process (args[0] is the program name).
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace epic
