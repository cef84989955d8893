#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siq {

// Front end behind main().  args excludes the program name.
// Exit codes: 0 success / all checks passed, 1 a verification line failed,
// 2 bad input (unreadable file, malformed word, cap exceeded, bad flags).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace siq
