#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

/// Raised when arguments violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request would exceed the configured digit/memory budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace liouville
