#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace strex {

// Full command-line surface; returns the process exit code.
// 0 = classified / success, 1 = usage or input error, 2 = open or unknown,
// 3 = certification failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace strex
