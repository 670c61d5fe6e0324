#include "coop/errors.h"

namespace coop {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kDegenerateGeometry:
      return "degenerate_geometry";
    case ErrorCode::kOutOfRange:
      return "out_of_range";
    case ErrorCode::kOverrun:
      return "overrun";
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kValidation:
      return "validation_error";
    case ErrorCode::kIntractable:
      return "intractable";
    case ErrorCode::kIo:
      return "io_error";
  }
  return "unknown";
}

}  // namespace coop
