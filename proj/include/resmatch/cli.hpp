#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resmatch {

// Exit codes: 0 ok, 1 mismatch, 2 input error, 3 internal defect, 4 guard exceeded.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace resmatch
