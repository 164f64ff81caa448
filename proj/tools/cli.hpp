#pragma once

#include <string>
#include <vector>

namespace smoothwave::cli {

// Full dispatch; args exclude argv[0]. Exit codes: 0 success, 1 domain or
// verification failure (structured error JSON on stderr), 2 usage.
int run(const std::vector<std::string>& args);

}  // namespace smoothwave::cli
