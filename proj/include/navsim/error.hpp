#pragma once

#include <stdexcept>
#include <string>

namespace navsim {

/// Recoverable failure with a stable machine-readable code
/// (e.g. "placement-exhausted", "schema", "io", "truncated").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Caller broke an operation's precondition (stepping a finished episode, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace navsim
