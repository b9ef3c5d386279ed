#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liouville::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kBudgetExhausted = 2,
};

/// Environment variable overriding the digit budget.
inline constexpr const char* kBudgetEnv = "LIOUVILLE_MAX_DIGITS";

/// Runs one command. `args` excludes the program name. Payload goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace liouville::cli
