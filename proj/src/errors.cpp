#include "magset/errors.hpp"

namespace magset {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kConstructionFailure:
      return "construction failure";
    case ErrorCode::kNoUnitPivot:
      return "no unit pivot";
    case ErrorCode::kUnknownSyndrome:
      return "unknown syndrome";
    case ErrorCode::kLengthMismatch:
      return "length mismatch";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kInternal:
      return "internal error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace magset
