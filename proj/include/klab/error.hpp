#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace klab {

enum class ErrorKind {
  InvalidSpec,
  InvalidElement,
  InvalidInput,
  NeedsCap,
  NeedsBox,
  Unsupported,
  OutOfHypothesis,
  InvalidLocalization,
  GuardExceeded,
  SurveyFailure,
};

std::string_view error_kind_name(ErrorKind kind);

/// Domain error raised by every klab operation. The CLI maps it to exit
/// code 1 and, in JSON mode, to `{"error": {"kind": ..., "message": ...}}`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace klab
