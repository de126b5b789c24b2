#include "core/errors.hpp"

namespace mps {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::contract_violation: return "contract_violation";
    case ErrorCode::illegal_action: return "illegal_action";
    case ErrorCode::capability_missing: return "capability_missing";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::unsupported_game: return "unsupported_game";
    case ErrorCode::invalid_bounds: return "invalid_bounds";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace mps
