#pragma once

// The `confkit` command line tool as a library function, so that it can be
// driven in-process by tests.
//
// Exit status: 0 ok, compliant or compatible; 1 a check failed or a
// validation violation was found; 2 parse, usage or I/O error.

#include <ostream>
#include <string>
#include <vector>

namespace confkit {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confkit
