#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lgm {

// Exit status for a library error kind; 0 is success, 2 is a usage error.
int exit_code_for(const std::string& kind);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgm
