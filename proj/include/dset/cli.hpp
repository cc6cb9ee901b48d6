#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dset::cli {

// Exit codes: 0 success, 2 usage or parameter error, 3 mathematical failure.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kMath = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dset::cli
