#pragma once

#include <string>
#include <vector>

namespace facefuse {

// Entry point shared by the binary and the tests. args[0] is the program
// name. Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
// failure.
int run_cli(const std::vector<std::string>& args);

} // namespace facefuse
