#pragma once

#include <string>
#include <vector>

namespace dppt {

// Front end behind the dppt binary. Exit codes: 0 ok, 1 bad input,
// 2 tolerance failure, 3 internal error. Failures also print a
// machine-readable JSON object on stderr.
int run_cli(int argc, const char* const* argv);

// Same, for in-process tests; args exclude the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace dppt
