#pragma once

#include <stdexcept>
#include <string>

namespace mps {

enum class ErrorCode {
  contract_violation = 1,
  illegal_action,
  capability_missing,
  invalid_config,
  unsupported_game,
  invalid_bounds,
  cap_exceeded,
  parse_error,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mps
