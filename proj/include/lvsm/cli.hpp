#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lvsm {

// Exit codes: 0 success, 1 negative verdict, 2 error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lvsm
