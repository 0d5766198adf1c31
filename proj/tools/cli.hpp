#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mrprov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one invocation. `args` excludes the program name. Returns the exit
/// code: 0 success, 2 input or usage error, 3 numerical/model error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrprov::cli
