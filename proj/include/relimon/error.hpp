#pragma once

#include <stdexcept>
#include <string>

namespace relimon {

enum class ErrorCode {
  invalid_argument = 1,
  parse_error = 2,
  no_root = 3,
  no_convergence = 4,
  numeric_overflow = 5,
  io_error = 6,
  internal = 7,
};

/// Library error carrying a stable code for the C ABI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace relimon
