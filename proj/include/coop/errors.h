#pragma once

#include <stdexcept>
#include <string>

namespace coop {

enum class ErrorCode {
  kInvalidInput,
  kDegenerateGeometry,
  kOutOfRange,
  kOverrun,
  kParse,
  kValidation,
  kIntractable,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

/// Single exception type thrown by the library; `code()` tells the failure
/// class apart without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coop
