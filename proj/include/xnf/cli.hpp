#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xnf {

/// Exit codes: 10 SAT, 20 UNSAT, 0 for other successful commands (and
/// solver timeouts), 1 usage error, 2 bad input.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace xnf
