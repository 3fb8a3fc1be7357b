#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lindemann {

enum class ErrorCode {
  InvalidArgument,
  DenominatorZero,
  PoleAtX,
  PoleAtMinusOne,
  OutOfDomain,
  DegenerateRoots,
  NonpositiveRate,
  SingularityApproached,
  MaxSteps,
  Diverged,
  BracketViolation,
  Undecided,
  SeamMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type for every failure raised by the library. The code lets
/// callers (notably the CLI) map failures onto exit statuses without
/// parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lindemann
