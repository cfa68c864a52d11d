#pragma once

#include <stdexcept>
#include <string>

namespace feyncoh {

/// Invalid argument or misuse of an API (wrong shapes, unknown kinds, ...).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// A numerical procedure failed to converge to the requested tolerance.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace feyncoh
