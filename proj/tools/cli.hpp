#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ocasync::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kBudgetExceeded = 2;
inline constexpr int kInvariantFailure = 3;

// args excludes the program name. Writes one JSON document to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocasync::cli
