#ifndef MAGSET_ERRORS_HPP_
#define MAGSET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace magset {

// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kConstructionFailure = 2,
  kNoUnitPivot = 3,
  kUnknownSyndrome = 4,
  kLengthMismatch = 5,
  kIo = 6,
  kInternal = 7,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& message);

}  // namespace magset

#endif  // MAGSET_ERRORS_HPP_
