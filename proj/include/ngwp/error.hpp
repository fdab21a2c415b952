#pragma once

#include <stdexcept>
#include <string>

namespace ngwp {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Disconnected,
  DegenerateDegree,
  Underflow,
  NumericalFailure,
  NotFound,
  Precondition,
  RankDeficiency,
  Parse,
  Checksum,
  Io,
};

/// Every error raised by the library. The code lets front ends map failures
/// onto exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerical kernels rather than of the input.
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::NumericalFailure ||
           code_ == ErrorCode::RankDeficiency ||
           code_ == ErrorCode::DegenerateDegree;
  }

 private:
  ErrorCode code_;
};

}  // namespace ngwp
