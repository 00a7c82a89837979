#pragma once

#include <stdexcept>
#include <string>

namespace gwtda {

enum class ErrorCode {
  InvalidInput,
  DuplicatePoint,
  ParamOutOfRange,
  NotPowerOfTwo,
  DimensionMismatch,
  EmptySet,
  TooLarge,
  WeightsNotConvex,
  DegenerateInput,
  SizeBlowup,
  NonMonotoneFiltration,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Exception carrying one of the library's error kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwtda
