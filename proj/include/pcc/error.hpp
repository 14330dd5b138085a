#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcc {

enum class ErrorCode {
  NonPositiveEntry,
  NonSquare,
  NotReciprocal,
  NotAntiSymmetric,
  Overflow,
  NotConsistent,
  DimensionMismatch,
  DimensionTooSmall,
  NotSymmetric,
  NotPSD,
  FormNotDefinite,
  DegenerateBasis,
  NonPositiveCoordinate,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status and callers can branch without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcc
