#pragma once

#include <stdexcept>
#include <string>

namespace tsdlink {

enum class ErrorCode {
  invalid_argument,
  parse,
  schema,
  division_by_zero,
  field_mismatch,
  rank_mismatch,
  dimension_cap,
  io,
  internal,
};

/// Exception type thrown by every core module. The C API maps `code()` onto
/// its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsdlink
