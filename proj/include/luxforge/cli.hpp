#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace luxforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;  // validation or computation error

/// Entry point behind the `luxforge` executable. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace luxforge::cli
