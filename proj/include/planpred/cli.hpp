#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace planpred {

// Parses and runs one command-line invocation (args exclude the program
// name). Returns the process exit code: 0 success, 1 domain error,
// 2 usage or parse error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace planpred
