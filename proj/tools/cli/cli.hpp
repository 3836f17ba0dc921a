#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitError = 2;

/// Runs one `fdlab` invocation. `args` excludes the program name.
/// Returns 0 when everything holds, 1 on a violation or a missing witness, and
/// 2 on usage, parse, model or budget errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdlab::cli
