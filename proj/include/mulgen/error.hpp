#pragma once

#include <stdexcept>
#include <string>

namespace mulgen {

enum class ErrorCode {
  InvalidArgument,
  EmptyName,
  DuplicatePort,
  ZeroWidth,
  ArityMismatch,
  UnknownNet,
  InvalidCircuit,
  OutOfRange,
  MissingPort,
  SpecViolation,
  WidthCap,
  Parse,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; the code lets the C API map
/// failures onto stable status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mulgen
