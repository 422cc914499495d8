// Command-line frontend.  Kept as a library function so the test suite can
// drive every subcommand in-process and check outputs.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holoprec {

// argv-style arguments without the program name.  Exit codes: 0 success,
// 1 error, 2 uncertified result under --strict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holoprec
