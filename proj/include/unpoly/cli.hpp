#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unpoly::cli {

/// Exit codes: 0 ok, 1 numeric gate tripped, 2 usage error.
inline constexpr int kOk = 0;
inline constexpr int kNumericFailure = 1;
inline constexpr int kUsage = 2;

/// Run the command line (without the program name). Output files go to --out
/// when given, otherwise to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unpoly::cli
