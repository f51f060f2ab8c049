#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfuzz::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;  // success; for `fuzz`, the post escaped
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExhausted = 3;
inline constexpr int kExitSkipped = 4;

// args excludes the program name. Records and summaries go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfuzz::cli
