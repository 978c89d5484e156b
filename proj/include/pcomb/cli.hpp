#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcomb::cli {

/// Exit codes: 0 success, 1 computation or I/O failure, 2 usage or invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace pcomb::cli
