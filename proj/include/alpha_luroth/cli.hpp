#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace alpha_luroth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUndetermined = 3;

/// Runs one command. `args` excludes the program name. Output goes to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alpha_luroth::cli
