#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epsk::cli {

// Exit codes: 0 success or verdict reached, 1 check failed or refuted,
// 2 search exhausted, 3 usage, file or parse error.
enum Exit { Ok = 0, Failed = 1, Exhausted = 2, Usage = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epsk::cli
